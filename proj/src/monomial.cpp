#include "certiposi/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "certiposi/errors.hpp"

namespace certiposi {

MonomialPoly::MonomialPoly(int n) : n_(n) {
  if (n < 1) throw DimensionError("polynomial dimension must be >= 1");
}

MonomialPoly::MonomialPoly(int n, Terms terms) : MonomialPoly(n) {
  for (auto& [alpha, c] : terms) add_term(alpha, c);
}

MonomialPoly MonomialPoly::constant(int n, const Rational& c) {
  MonomialPoly p(n);
  p.add_term(MultiIndex::zero(n), c);
  return p;
}

MonomialPoly MonomialPoly::variable(int n, int i) {
  if (i < 0 || i >= n) throw DimensionError("variable index out of range");
  MonomialPoly p(n);
  p.add_term(MultiIndex::unit(n, i), Rational(1));
  return p;
}

int MonomialPoly::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.order());
  return d;
}

Rational MonomialPoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MonomialPoly::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.dim() != n_) throw DimensionError("exponent vector length differs from dimension");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MonomialPoly MonomialPoly::derivative(int i) const {
  MonomialPoly d(n_);
  for (const auto& [alpha, c] : terms_) {
    const int e = alpha[i];
    if (e == 0) continue;
    std::vector<int> beta(alpha.entries().begin(), alpha.entries().end());
    --beta[static_cast<std::size_t>(i)];
    d.add_term(MultiIndex(std::move(beta)), c * e);
  }
  return d;
}

MonomialPoly MonomialPoly::operator-() const {
  MonomialPoly r(*this);
  for (auto& [alpha, c] : r.terms_) c = -c;
  return r;
}

MonomialPoly& MonomialPoly::operator+=(const MonomialPoly& other) {
  if (other.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

MonomialPoly& MonomialPoly::operator-=(const MonomialPoly& other) {
  if (other.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

MonomialPoly& MonomialPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, v] : terms_) v *= c;
  return *this;
}

namespace {

// Integer numerators over one common denominator.
struct Scaled {
  std::vector<std::pair<std::size_t, Integer>> nums;  // (rank, numerator)
  Integer den = 1;
};

Scaled scale_terms(const MonomialPoly& p, const IndexSet& idx) {
  Scaled s;
  for (const auto& [alpha, c] : p.terms()) {
    mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), c.get_den_mpz_t());
  }
  s.nums.reserve(p.terms().size());
  for (const auto& [alpha, c] : p.terms()) {
    Integer num = c.get_num() * (s.den / c.get_den());
    s.nums.emplace_back(idx.rank(alpha.entries()), std::move(num));
  }
  return s;
}

}  // namespace

MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b) {
  if (a.dim() != b.dim()) throw DimensionError("polynomial dimension mismatch");
  const int n = a.dim();
  if (a.is_zero() || b.is_zero()) return MonomialPoly(n);
  const int da = a.degree();
  const int db = b.degree();
  auto ia = IndexSet::get(n, da);
  auto ib = IndexSet::get(n, db);
  auto ic = IndexSet::get(n, da + db);
  Scaled sa = scale_terms(a, *ia);
  Scaled sb = scale_terms(b, *ib);
  std::vector<Integer> acc(ic->size());
  std::vector<char> touched(ic->size(), 0);
  std::vector<int> gamma(static_cast<std::size_t>(n));
  for (const auto& [ra, na] : sa.nums) {
    auto alpha = (*ia)[ra];
    for (const auto& [rb, nb] : sb.nums) {
      auto beta = (*ib)[rb];
      for (int i = 0; i < n; ++i) {
        gamma[static_cast<std::size_t>(i)] = alpha[static_cast<std::size_t>(i)] + beta[static_cast<std::size_t>(i)];
      }
      const std::size_t rc = ic->rank(gamma);
      mpz_addmul(acc[rc].get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
      touched[rc] = 1;
    }
  }
  const Integer den = sa.den * sb.den;
  MonomialPoly r(n);
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (!touched[k] || acc[k] == 0) continue;
    auto g = (*ic)[k];
    Rational c(acc[k], den);
    c.canonicalize();
    r.add_term(MultiIndex(std::vector<int>(g.begin(), g.end())), c);
  }
  return r;
}

Rational mono_eval(const MonomialPoly& p, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != p.dim()) throw DimensionError("point dimension mismatch");
  Rational sum = 0;
  const int d = p.degree();
  // powers[i][k] = x_i^k
  std::vector<std::vector<Rational>> powers(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    powers[i].resize(static_cast<std::size_t>(d) + 1);
    powers[i][0] = 1;
    for (int k = 1; k <= d; ++k) powers[i][static_cast<std::size_t>(k)] = powers[i][static_cast<std::size_t>(k - 1)] * x[i];
  }
  for (const auto& [alpha, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < p.dim(); ++i) {
      const int e = alpha[i];
      if (e) t *= powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)];
    }
    sum += t;
  }
  return sum;
}

double mono_eval(const MonomialPoly& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.dim()) throw DimensionError("point dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    double t = c.get_d();
    for (int i = 0; i < p.dim(); ++i) {
      const int e = alpha[i];
      if (e) t *= std::pow(x[static_cast<std::size_t>(i)], e);
    }
    sum += t;
  }
  return sum;
}

}  // namespace certiposi
