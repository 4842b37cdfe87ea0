#include "certiposi/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "certiposi/errors.hpp"
#include "certiposi/parallel.hpp"

namespace certiposi {

BernsteinPoly bernstein_operator(const SampleFunction& psi, int m, const SimplexDomain& dom) {
  if (m < 1) throw DegreeError("Bernstein operator degree must be >= 1");
  if (!psi.eval) throw InputError("sample function has no evaluator");
  const auto pts = lattice_points(dom, m);
  BernsteinPoly b(dom, m);
  auto c = b.coeffs();
  parallel_for(pts.size(), [&](std::size_t r) { c[r] = psi.eval(pts[r]); });
  return b;
}

double approx_error_bound(const SampleFunction& psi, int m, int n) {
  if (!psi.lipschitz) throw InputError("approximation bound needs a Lipschitz constant");
  if (m < 1) throw DegreeError("Bernstein operator degree must be >= 1");
  return 2.0 * *psi.lipschitz * (2.0 * n / std::sqrt(static_cast<double>(m)));
}

double markov_bound(int d, int n) {
  if (d < 0) throw DegreeError("negative degree");
  return 2.0 * d * (2.0 * d - 1.0) / (std::sqrt(static_cast<double>(n)) + 1.0);
}

Integer polya_degree(int d, const Rational& norm_b, const Rational& pstar) {
  if (pstar <= 0) throw InputError("p* must be positive");
  if (norm_b < 0) throw InputError("Bernstein norm must be nonnegative");
  return ceil_div(Rational(d) * d * norm_b / pstar);
}

void PlateauSpec::validate() const {
  if (delta <= 0) throw InputError("plateau delta must be positive");
  if (sqrt_nu <= 0 || sqrt_nu > 1) throw InputError("plateau sqrt_nu must lie in (0, 1]");
  const Rational q = 1 - sqrt_nu / 4;
  if (q * q < Rational(1, 2)) throw InputError("plateau nu too large: (1 - sqrt_nu/4)^2 < 1/2");
  if (m_prime && *m_prime < 1) throw InputError("plateau m_prime must be >= 1");
}

Rational phi_eval(const PlateauSpec& spec, const Rational& t) {
  if (t < -1 || t > 1) throw DomainError("plateau argument " + to_string(t) + " outside [-1, 1]");
  if (t <= -spec.delta) return 1;
  if (t >= 0) return spec.sqrt_nu;
  const Rational u = t / spec.delta;
  return spec.sqrt_nu + (3 * u * u + 2 * u * u * u) * (1 - spec.sqrt_nu);
}

double phi_eval(const PlateauSpec& spec, double t) {
  const double delta = spec.delta.get_d();
  const double root = spec.sqrt_nu.get_d();
  if (t <= -delta) return 1.0;
  if (t >= 0.0) return root;
  const double u = t / delta;
  return root + (3.0 * u * u + 2.0 * u * u * u) * (1.0 - root);
}

Integer plateau_worst_case_degree(int n, int d, const Rational& delta, const Rational& nu) {
  const Rational d2 = Rational(d) * d;
  return ceil_div(Rational(16384) * n * d2 * d2 / (delta * delta * nu));
}

Integer plateau_stated_degree(int n, int d, const Rational& delta, const Rational& nu) {
  return ceil_div(Rational(16384) * n * d * d / (delta * delta * nu));
}

namespace {

double grid_error(const BernsteinPoly& s, const MonomialPoly& g, const PlateauSpec& spec,
                  const std::vector<std::vector<double>>& grid) {
  const BernsteinEvaluator eval(s);
  std::vector<double> err(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    err[i] = std::fabs(eval(grid[i]) - phi_eval(spec, mono_eval(g, std::span<const double>(grid[i]))));
  });
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

void check_budget(int m, int n, const PlateauOptions& opts) {
  double size = 1.0;
  for (int i = 1; i <= n; ++i) size = size * (m + i) / i;
  if (m > opts.max_degree || size > static_cast<double>(opts.max_coefficients)) {
    throw BudgetExceeded("plateau degree " + std::to_string(m) + " exceeds the budget (max degree " +
                         std::to_string(opts.max_degree) + ", max coefficients " +
                         std::to_string(opts.max_coefficients) + ")");
  }
}

}  // namespace

PlateauResult build_plateau(const MonomialPoly& g_scaled, const PlateauSpec& spec,
                            const SimplexDomain& dom, const PlateauOptions& opts) {
  spec.validate();
  if (g_scaled.dim() != dom.dim()) throw DimensionError("constraint and simplex dimensions differ");
  const int n = dom.dim();
  const int d = std::max(1, g_scaled.degree());
  const SampleFunction psi{[&](std::span<const Rational> x) { return phi_eval(spec, mono_eval(g_scaled, x)); },
                           2.0 / spec.delta.get_d() * markov_bound(d, n)};
  const auto grid = lattice_points_double(dom, lattice_resolution(n, opts.grid_points));
  const double target = spec.sqrt_nu.get_d() / 4.0;

  auto finish = [&](BernsteinPoly s, int m, double err) {
    PlateauResult res{std::move(s), m, err, target, grid.size(), *psi.lipschitz, approx_error_bound(psi, m, n)};
    return res;
  };

  if (spec.m_prime || opts.worst_case) {
    int m = 0;
    if (spec.m_prime) {
      m = *spec.m_prime;
    } else {
      const Integer w = plateau_worst_case_degree(n, d, spec.delta, spec.nu());
      if (w > opts.max_degree) {
        throw BudgetExceeded("worst-case plateau degree " + w.get_str() + " exceeds max degree " +
                             std::to_string(opts.max_degree));
      }
      m = static_cast<int>(w.get_si());
    }
    check_budget(m, n, opts);
    auto s = bernstein_operator(psi, m, dom);
    const double err = grid_error(s, g_scaled, spec, grid);
    return finish(std::move(s), m, err);
  }

  for (int m = 1;; m *= 2) {
    check_budget(m, n, opts);
    auto s = bernstein_operator(psi, m, dom);
    const double err = grid_error(s, g_scaled, spec, grid);
    if (err <= target) return finish(std::move(s), m, err);
  }
}

}  // namespace certiposi
