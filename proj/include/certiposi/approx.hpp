#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "certiposi/bernstein.hpp"
#include "certiposi/monomial.hpp"
#include "certiposi/rational.hpp"
#include "certiposi/simplex.hpp"

namespace certiposi {

/// A function on D^ sampled at rational points, with an optional Lipschitz constant.
struct SampleFunction {
  std::function<Rational(std::span<const Rational>)> eval;
  std::optional<double> lipschitz;
};

/// B_m(psi) = sum_alpha psi(theta(alpha / m)) B_{m,alpha}.
BernsteinPoly bernstein_operator(const SampleFunction& psi, int m, const SimplexDomain& dom);

/// 2 * Lip * (2n / sqrt(m)), an upper bound for sup |psi - B_m psi| on D^.
double approx_error_bound(const SampleFunction& psi, int m, int n);

/// max ||grad p||_2 / ||p||_inf over D^ is at most 2d(2d - 1) / (sqrt(n) + 1).
double markov_bound(int d, int n);

/// ceil(d^2 ||p||_B / p*): the elevation degree after which a polynomial
/// bounded below by p* on D^ has nonnegative Bernstein coefficients.
Integer polya_degree(int d, const Rational& norm_b, const Rational& pstar);

/**
 * Parameters of the plateau function
 *
 *   phi(t) = 1                                         on [-1, -delta]
 *          = sqrt_nu + (3 t^2/delta^2 + 2 t^3/delta^3)(1 - sqrt_nu)  on [-delta, 0]
 *          = sqrt_nu                                   on [0, 1]
 *
 * m_prime, when set, fixes the Bernstein degree instead of searching for it.
 */
struct PlateauSpec {
  Rational delta;
  Rational sqrt_nu;
  std::optional<int> m_prime;

  Rational nu() const { return sqrt_nu * sqrt_nu; }
  /// Throws InputError unless delta > 0, sqrt_nu > 0 and (1 - sqrt_nu/4)^2 >= 1/2.
  void validate() const;
};

Rational phi_eval(const PlateauSpec& spec, const Rational& t);
double phi_eval(const PlateauSpec& spec, double t);

struct PlateauOptions {
  /// Approximate number of grid points used to measure sup |s - phi(g)|.
  std::size_t grid_points = 10000;
  /// Largest m' tried by the doubling search.
  int max_degree = 4096;
  /// Largest coefficient count C(m' + n, n) allowed for s.
  std::size_t max_coefficients = 400000;
  /// Use the closed-form degree instead of searching.
  bool worst_case = false;
};

struct PlateauResult {
  BernsteinPoly s;
  int m_prime = 0;
  /// Measured max |s - phi(g)| over the check grid.
  double grid_error = 0.0;
  /// sqrt(nu) / 4
  double target = 0.0;
  std::size_t grid_size = 0;
  /// Lipschitz constant (2/delta) markov_bound(deg g, n) of phi o g.
  double lipschitz = 0.0;
  /// approx_error_bound at m'.
  double error_bound = 0.0;
};

/// 16384 n d^4 / (delta^2 nu), the m' that the Markov/Bernstein error chain guarantees.
Integer plateau_worst_case_degree(int n, int d, const Rational& delta, const Rational& nu);
/// The same constant with d^2, as the plateau statement writes it.
Integer plateau_stated_degree(int n, int d, const Rational& delta, const Rational& nu);

/**
 * s = B_{m'}(phi o g) for a constraint scaled to ||g||_B = 1. m' is the first
 * power of two whose grid error is at most sqrt(nu)/4 (or the closed-form
 * degree in worst-case mode); BudgetExceeded when the caps are reached first.
 */
PlateauResult build_plateau(const MonomialPoly& g_scaled, const PlateauSpec& spec,
                            const SimplexDomain& dom, const PlateauOptions& opts = {});

}  // namespace certiposi
