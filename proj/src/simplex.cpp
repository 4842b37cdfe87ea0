#include "certiposi/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "certiposi/errors.hpp"

namespace certiposi {

SimplexDomain::SimplexDomain(int n, Rational s_hat) : n_(n), s_hat_(std::move(s_hat)) {
  if (n < 1) throw DimensionError("simplex dimension must be >= 1");
  s_hat_.canonicalize();
  if (s_hat_ * s_hat_ < n) {
    throw DomainError("s_hat = " + to_string(s_hat_) + " does not satisfy s_hat^2 >= n");
  }
}

Rational SimplexDomain::default_s_hat(int n) { return sqrt_ceil_decimal(Rational(n), 12); }

SimplexDomain SimplexDomain::standard(int n) { return SimplexDomain(n, default_s_hat(n)); }

std::vector<Rational> SimplexDomain::barycentric(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("point dimension mismatch");
  const Rational w = scale();
  std::vector<Rational> lam(static_cast<std::size_t>(n_) + 1);
  Rational sum = 0;
  for (int j = 0; j < n_; ++j) {
    sum += x[static_cast<std::size_t>(j)];
    lam[static_cast<std::size_t>(j) + 1] = (1 + x[static_cast<std::size_t>(j)]) / w;
  }
  lam[0] = (s_hat_ - sum) / w;
  return lam;
}

std::vector<double> SimplexDomain::barycentric(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("point dimension mismatch");
  const double s = s_hat_.get_d();
  const double w = n_ + s;
  std::vector<double> lam(static_cast<std::size_t>(n_) + 1);
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) {
    sum += x[static_cast<std::size_t>(j)];
    lam[static_cast<std::size_t>(j) + 1] = (1.0 + x[static_cast<std::size_t>(j)]) / w;
  }
  lam[0] = (s - sum) / w;
  return lam;
}

std::vector<Rational> SimplexDomain::theta(std::span<const Rational> u) const {
  if (static_cast<int>(u.size()) != n_) throw DimensionError("point dimension mismatch");
  const Rational w = scale();
  std::vector<Rational> x(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) x[j] = w * u[j] - 1;
  return x;
}

bool SimplexDomain::contains(std::span<const Rational> x) const {
  for (const auto& l : barycentric(x)) {
    if (l < 0) return false;
  }
  return true;
}

bool SimplexDomain::contains(std::span<const double> x, double tol) const {
  for (double l : barycentric(x)) {
    if (l < -tol) return false;
  }
  return true;
}

std::vector<MonomialPoly> SimplexDomain::generators() const {
  std::vector<MonomialPoly> gens;
  MonomialPoly g0 = MonomialPoly::constant(n_, s_hat_);
  for (int j = 0; j < n_; ++j) g0 -= MonomialPoly::variable(n_, j);
  gens.push_back(std::move(g0));
  for (int j = 0; j < n_; ++j) {
    gens.push_back(MonomialPoly::constant(n_, Rational(1)) + MonomialPoly::variable(n_, j));
  }
  return gens;
}

std::vector<std::vector<double>> SimplexDomain::vertices() const {
  const double w = n_ + s_hat_.get_d();
  std::vector<std::vector<double>> v;
  v.emplace_back(static_cast<std::size_t>(n_), -1.0);
  for (int j = 0; j < n_; ++j) {
    std::vector<double> p(static_cast<std::size_t>(n_), -1.0);
    p[static_cast<std::size_t>(j)] += w;
    v.push_back(std::move(p));
  }
  return v;
}

double SimplexDomain::diameter() const {
  const auto v = vertices();
  double best = 0.0;
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < v[a].size(); ++i) d2 += (v[a][i] - v[b][i]) * (v[a][i] - v[b][i]);
      best = std::max(best, std::sqrt(d2));
    }
  }
  return best;
}

std::vector<std::vector<Rational>> lattice_points(const SimplexDomain& dom, int k) {
  if (k < 1) throw InputError("lattice resolution must be >= 1");
  IndexSet idx(dom.dim(), k);
  std::vector<std::vector<Rational>> pts;
  pts.reserve(idx.size());
  std::vector<Rational> u(static_cast<std::size_t>(dom.dim()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto alpha = idx[r];
    for (std::size_t j = 0; j < u.size(); ++j) {
      u[j] = Rational(alpha[j], k);
      u[j].canonicalize();
    }
    pts.push_back(dom.theta(u));
  }
  return pts;
}

std::vector<std::vector<double>> lattice_points_double(const SimplexDomain& dom, int k) {
  if (k < 1) throw InputError("lattice resolution must be >= 1");
  IndexSet idx(dom.dim(), k);
  const double w = dom.dim() + dom.s_hat().get_d();
  std::vector<std::vector<double>> pts;
  pts.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto alpha = idx[r];
    std::vector<double> x(alpha.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = w * alpha[j] / k - 1.0;
    pts.push_back(std::move(x));
  }
  return pts;
}

int lattice_resolution(int n, std::size_t target) {
  int k = 1;
  while (true) {
    // C(k + n, n) computed incrementally in floating point; exact enough for sizing
    double c = 1.0;
    for (int i = 1; i <= n; ++i) c = c * (k + i) / i;
    if (c >= static_cast<double>(target)) return k;
    ++k;
  }
}

}  // namespace certiposi
