#include "certiposi/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "certiposi/errors.hpp"

namespace certiposi {

namespace {

// Rank lists of alpha + k e_axis (k = 0, 1, ...) for every alpha with alpha_axis = 0.
std::vector<std::vector<std::size_t>> axis_lines(const IndexSet& idx, int axis) {
  std::vector<std::vector<std::size_t>> lines;
  std::vector<int> a(static_cast<std::size_t>(idx.dim()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto alpha = idx[r];
    if (alpha[static_cast<std::size_t>(axis)] != 0) continue;
    std::copy(alpha.begin(), alpha.end(), a.begin());
    const int len = idx.degree() - idx.order(r) + 1;
    std::vector<std::size_t> line;
    line.reserve(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) {
      a[static_cast<std::size_t>(axis)] = k;
      line.push_back(idx.rank(a));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

// v_k <- sum_{i <= k} C(k, i) (+-1)^{k - i} v_i along each line of every axis.
template <class T>
void lower_binomial(std::vector<T>& v, const IndexSet& idx, bool alternating) {
  for (int axis = 0; axis < idx.dim(); ++axis) {
    for (const auto& line : axis_lines(idx, axis)) {
      const std::size_t len = line.size();
      for (std::size_t j = 1; j < len; ++j) {
        for (std::size_t k = len - 1; k >= j; --k) {
          if (alternating) {
            v[line[k]] -= v[line[k - 1]];
          } else {
            v[line[k]] += v[line[k - 1]];
          }
        }
      }
    }
  }
}

// v_k <- sum_{i >= k} C(i, k) (+-1)^{i - k} v_i along each line of every axis.
template <class T>
void upper_binomial(std::vector<T>& v, const IndexSet& idx, bool alternating) {
  for (int axis = 0; axis < idx.dim(); ++axis) {
    for (const auto& line : axis_lines(idx, axis)) {
      const std::size_t len = line.size();
      if (len < 2) continue;
      for (std::size_t j = 0; j + 1 < len; ++j) {
        for (std::size_t k = len - 1; k-- > j;) {
          if (alternating) {
            v[line[k]] -= v[line[k + 1]];
          } else {
            v[line[k]] += v[line[k + 1]];
          }
        }
      }
    }
  }
}

Integer common_denominator(std::span<const Rational> c) {
  Integer d = 1;
  for (const auto& q : c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  return d;
}

void require_same_domain(const SimplexDomain& a, const SimplexDomain& b) {
  if (!(a == b)) throw DomainError("Bernstein polynomials live on different simplices");
}

}  // namespace

BernsteinPoly::BernsteinPoly(SimplexDomain dom, int m)
    : dom_(std::move(dom)), m_(m), idx_(IndexSet::get(dom_.dim(), m)), c_(idx_->size()) {}

BernsteinPoly BernsteinPoly::constant(const SimplexDomain& dom, int m, const Rational& c) {
  BernsteinPoly b(dom, m);
  std::fill(b.c_.begin(), b.c_.end(), c);
  return b;
}

Rational BernsteinPoly::coeff(const MultiIndex& alpha) const {
  if (alpha.dim() != dim()) throw DimensionError("multi-index dimension mismatch");
  if (alpha.order() > m_) return 0;
  return c_[idx_->rank(alpha.entries())];
}

void BernsteinPoly::set_coeff(const MultiIndex& alpha, const Rational& c) {
  if (alpha.dim() != dim()) throw DimensionError("multi-index dimension mismatch");
  if (alpha.order() > m_) throw DegreeError("|alpha| exceeds the representation degree");
  c_[idx_->rank(alpha.entries())] = c;
}

bool BernsteinPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool BernsteinPoly::all_nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q >= 0; });
}

Rational BernsteinPoly::min_coeff() const { return *std::min_element(c_.begin(), c_.end()); }

Rational BernsteinPoly::max_coeff() const { return *std::max_element(c_.begin(), c_.end()); }

bool HomogeneousForm::all_nonnegative() const {
  return std::all_of(w.begin(), w.end(), [](const Integer& z) { return sgn(z) >= 0; });
}

HomogeneousForm to_homogeneous(const BernsteinPoly& b) {
  HomogeneousForm h;
  h.n = b.dim();
  h.m = b.degree();
  h.den = common_denominator(b.coeffs());
  const auto& idx = b.index_set();
  h.w.resize(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const Rational& c = b.coeffs()[r];
    if (c == 0) continue;
    h.w[r] = c.get_num() * (h.den / c.get_den()) * combinatorics::multinomial(h.m, idx[r]);
  }
  return h;
}

BernsteinPoly from_homogeneous(const SimplexDomain& dom, const HomogeneousForm& h) {
  if (dom.dim() != h.n) throw DimensionError("homogeneous form dimension mismatch");
  BernsteinPoly b(dom, h.m);
  const auto& idx = b.index_set();
  auto c = b.coeffs();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (h.w[r] == 0) continue;
    c[r] = Rational(h.w[r], h.den * combinatorics::multinomial(h.m, idx[r]));
    c[r].canonicalize();
  }
  return b;
}

void elevate_in_place(HomogeneousForm& h, int target) {
  if (target < h.m) throw DegreeError("cannot elevate to a lower degree");
  std::vector<int> a(static_cast<std::size_t>(h.n));
  while (h.m < target) {
    auto src = IndexSet::get(h.n, h.m);
    auto dst = IndexSet::get(h.n, h.m + 1);
    std::vector<Integer> next(dst->size());
    for (std::size_t r = 0; r < dst->size(); ++r) {
      auto gamma = (*dst)[r];
      Integer& acc = next[r];
      // lambda_0 contributes when gamma_0 = m + 1 - |gamma| > 0
      if (dst->order(r) <= h.m) acc += h.w[src->rank(gamma)];
      std::copy(gamma.begin(), gamma.end(), a.begin());
      for (int j = 0; j < h.n; ++j) {
        auto& aj = a[static_cast<std::size_t>(j)];
        if (aj == 0) continue;
        --aj;
        acc += h.w[src->rank(a)];
        ++aj;
      }
    }
    h.w = std::move(next);
    ++h.m;
  }
}

HomogeneousForm multiply(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.n != b.n) throw DimensionError("homogeneous form dimension mismatch");
  HomogeneousForm c;
  c.n = a.n;
  c.m = a.m + b.m;
  c.den = a.den * b.den;
  auto ia = IndexSet::get(a.n, a.m);
  auto ib = IndexSet::get(b.n, b.m);
  auto ic = IndexSet::get(c.n, c.m);
  c.w.assign(ic->size(), Integer(0));
  std::vector<int> gamma(static_cast<std::size_t>(c.n));
  for (std::size_t ra = 0; ra < ia->size(); ++ra) {
    if (a.w[ra] == 0) continue;
    auto alpha = (*ia)[ra];
    for (std::size_t rb = 0; rb < ib->size(); ++rb) {
      if (b.w[rb] == 0) continue;
      auto beta = (*ib)[rb];
      for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] = alpha[i] + beta[i];
      mpz_addmul(c.w[ic->rank(gamma)].get_mpz_t(), a.w[ra].get_mpz_t(), b.w[rb].get_mpz_t());
    }
  }
  return c;
}

BernsteinPoly mono_to_bernstein(const MonomialPoly& p, int m, const SimplexDomain& dom) {
  if (p.dim() != dom.dim()) throw DimensionError("polynomial and simplex dimensions differ");
  const int d = p.degree();
  if (m < d) {
    throw DegreeError("representation degree " + std::to_string(m) + " is below deg p = " +
                      std::to_string(d));
  }
  if (p.is_zero()) return BernsteinPoly(dom, m);
  auto idx = IndexSet::get(p.dim(), d);
  std::vector<Rational> v(idx->size());
  for (const auto& [alpha, c] : p.terms()) v[idx->rank(alpha.entries())] = c;
  // x = u - 1 with u_j = 1 + x_j
  upper_binomial(v, *idx, /*alternating=*/true);
  // u^b = (n + s_hat)^{|b|} lambda^b, then divide by C(d; b) and sum over b <= alpha
  std::vector<Rational> scale_pow(static_cast<std::size_t>(d) + 1);
  scale_pow[0] = 1;
  for (int k = 1; k <= d; ++k) scale_pow[static_cast<std::size_t>(k)] = scale_pow[static_cast<std::size_t>(k - 1)] * dom.scale();
  for (std::size_t r = 0; r < idx->size(); ++r) {
    if (v[r] == 0) continue;
    v[r] *= scale_pow[static_cast<std::size_t>(idx->order(r))];
    v[r] /= Rational(combinatorics::multinomial(d, (*idx)[r]));
  }
  lower_binomial(v, *idx, /*alternating=*/false);
  BernsteinPoly b(dom, d);
  std::copy(v.begin(), v.end(), b.coeffs().begin());
  return m == d ? b : elevate(b, m);
}

MonomialPoly bernstein_to_mono(const BernsteinPoly& b) {
  const int n = b.dim();
  const int m = b.degree();
  const auto& idx = b.index_set();
  const Integer den = common_denominator(b.coeffs());
  std::vector<Integer> v(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const Rational& c = b.coeffs()[r];
    if (c != 0) v[r] = c.get_num() * (den / c.get_den());
  }
  // forward differences give the power-basis coefficients in lambda_1..lambda_n
  lower_binomial(v, idx, /*alternating=*/true);
  // lambda_j = u_j * sd / W where n + s_hat = W / sd; bring everything over W^m
  const Rational& s = b.domain().s_hat();
  const Integer sd = s.get_den();
  const Integer big_w = Integer(n) * sd + s.get_num();
  std::vector<Integer> sd_pow(static_cast<std::size_t>(m) + 1);
  std::vector<Integer> w_pow(static_cast<std::size_t>(m) + 1);
  sd_pow[0] = 1;
  w_pow[0] = 1;
  for (int k = 1; k <= m; ++k) {
    sd_pow[static_cast<std::size_t>(k)] = sd_pow[static_cast<std::size_t>(k - 1)] * sd;
    w_pow[static_cast<std::size_t>(k)] = w_pow[static_cast<std::size_t>(k - 1)] * big_w;
  }
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (v[r] == 0) continue;
    const int k = idx.order(r);
    v[r] *= combinatorics::multinomial(m, idx[r]);
    v[r] *= sd_pow[static_cast<std::size_t>(k)];
    v[r] *= w_pow[static_cast<std::size_t>(m - k)];
  }
  // u = x + 1
  upper_binomial(v, idx, /*alternating=*/false);
  const Integer total_den = den * w_pow[static_cast<std::size_t>(m)];
  MonomialPoly p(n);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (v[r] == 0) continue;
    Rational c(v[r], total_den);
    c.canonicalize();
    auto alpha = idx[r];
    p.add_term(MultiIndex(std::vector<int>(alpha.begin(), alpha.end())), c);
  }
  return p;
}

Rational bernstein_eval(const BernsteinPoly& b, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != b.dim()) throw DimensionError("point dimension mismatch");
  const auto lam = b.domain().barycentric(x);
  const int m = b.degree();
  const auto h = to_homogeneous(b);
  const auto& idx = b.index_set();
  std::vector<std::vector<Rational>> powers(lam.size(), std::vector<Rational>(static_cast<std::size_t>(m) + 1));
  for (std::size_t j = 0; j < lam.size(); ++j) {
    powers[j][0] = 1;
    for (int k = 1; k <= m; ++k) powers[j][static_cast<std::size_t>(k)] = powers[j][static_cast<std::size_t>(k - 1)] * lam[j];
  }
  Rational sum = 0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (h.w[r] == 0) continue;
    auto alpha = idx[r];
    Rational t(h.w[r]);
    t *= powers[0][static_cast<std::size_t>(m - idx.order(r))];
    for (std::size_t j = 0; j < alpha.size(); ++j) t *= powers[j + 1][static_cast<std::size_t>(alpha[j])];
    sum += t;
  }
  sum /= Rational(h.den);
  return sum;
}

BernsteinPoly elevate(const BernsteinPoly& b, int m2) {
  if (m2 < b.degree()) {
    throw DegreeError("cannot elevate from degree " + std::to_string(b.degree()) + " to " +
                      std::to_string(m2));
  }
  if (m2 == b.degree()) return b;
  auto h = to_homogeneous(b);
  elevate_in_place(h, m2);
  return from_homogeneous(b.domain(), h);
}

BernsteinPoly multiply(const BernsteinPoly& a, const BernsteinPoly& b) {
  require_same_domain(a.domain(), b.domain());
  return from_homogeneous(a.domain(), multiply(to_homogeneous(a), to_homogeneous(b)));
}

Rational bnorm(const BernsteinPoly& b) {
  Rational best = 0;
  for (const auto& c : b.coeffs()) {
    if (abs(c) > best) best = abs(c);
  }
  return best;
}

BernsteinPoly linear_combine(const std::vector<std::pair<Rational, const BernsteinPoly*>>& terms,
                             int m, const SimplexDomain& dom) {
  BernsteinPoly out(dom, m);
  auto acc = out.coeffs();
  for (const auto& [scale, poly] : terms) {
    require_same_domain(dom, poly->domain());
    if (poly->degree() > m) {
      throw DegreeError("term of degree " + std::to_string(poly->degree()) +
                        " cannot be combined at degree " + std::to_string(m));
    }
    if (scale == 0) continue;
    const BernsteinPoly lifted = elevate(*poly, m);
    auto c = lifted.coeffs();
    for (std::size_t r = 0; r < acc.size(); ++r) {
      if (c[r] != 0) acc[r] += scale * c[r];
    }
  }
  return out;
}

BernsteinEvaluator::BernsteinEvaluator(const BernsteinPoly& b)
    : n_(b.dim()),
      m_(b.degree()),
      s_hat_(b.domain().s_hat().get_d()),
      idx_(IndexSet::get(b.dim(), b.degree())) {
  coeff_.reserve(idx_->size());
  log_multinomial_.reserve(idx_->size());
  const double lm = std::lgamma(m_ + 1.0);
  for (std::size_t r = 0; r < idx_->size(); ++r) {
    coeff_.push_back(b.coeffs()[r].get_d());
    double l = lm - std::lgamma(m_ - idx_->order(r) + 1.0);
    for (int a : (*idx_)[r]) l -= std::lgamma(a + 1.0);
    log_multinomial_.push_back(l);
  }
}

double BernsteinEvaluator::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("point dimension mismatch");
  const double w = n_ + s_hat_;
  std::vector<double> lam(static_cast<std::size_t>(n_) + 1);
  double sum_x = 0.0;
  for (int j = 0; j < n_; ++j) {
    sum_x += x[static_cast<std::size_t>(j)];
    lam[static_cast<std::size_t>(j) + 1] = (1.0 + x[static_cast<std::size_t>(j)]) / w;
  }
  lam[0] = (s_hat_ - sum_x) / w;
  std::vector<double> log_abs(lam.size());
  for (std::size_t j = 0; j < lam.size(); ++j) log_abs[j] = std::log(std::fabs(lam[j]));
  double total = 0.0;
  for (std::size_t r = 0; r < idx_->size(); ++r) {
    if (coeff_[r] == 0.0) continue;
    auto alpha = (*idx_)[r];
    double lg = log_multinomial_[r];
    bool negative = false;
    bool vanishes = false;
    auto take = [&](std::size_t j, int e) {
      if (e == 0) return;
      if (lam[j] == 0.0) {
        vanishes = true;
        return;
      }
      lg += e * log_abs[j];
      if (lam[j] < 0.0 && (e & 1)) negative = !negative;
    };
    take(0, m_ - idx_->order(r));
    for (std::size_t j = 0; j < alpha.size(); ++j) take(j + 1, alpha[j]);
    if (vanishes) continue;
    const double basis = std::exp(lg);
    total += (negative ? -basis : basis) * coeff_[r];
  }
  return total;
}

}  // namespace certiposi
