#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "certiposi/approx.hpp"
#include "certiposi/bernstein.hpp"
#include "certiposi/monomial.hpp"
#include "certiposi/rational.hpp"
#include "certiposi/simplex.hpp"
#include "json.hpp"

namespace certiposi {

/**
 * The constraints g_1, ..., g_r >= 0 cutting S out of D^. Raw input systems
 * have scaled = false; normalize_system divides every g_i by its Bernstein
 * norm and records the divisors in scale_factors.
 */
struct SemialgSystem {
  SimplexDomain dom;
  std::vector<MonomialPoly> g;
  std::vector<std::string> names;
  bool scaled = false;
  bool ball_checked = false;
  /// ||g_i||_B of the raw constraints (filled by normalize_system).
  std::vector<Rational> scale_factors;

  int dim() const { return dom.dim(); }
  int count() const { return static_cast<int>(g.size()); }
  /// max_i deg g_i, 0 without constraints.
  int max_degree() const;
};

/// ||p||_B at the degree of p.
Rational bernstein_norm(const MonomialPoly& p, const SimplexDomain& dom);

/// Divides each g_i by ||g_i||_B. Idempotent; throws InputError on a zero constraint.
SemialgSystem normalize_system(const SemialgSystem& raw);

struct BallCheck {
  enum class Status { contained, not_contained, unknown };
  Status status = Status::unknown;
  double max_norm = 0.0;
  std::size_t feasible = 0;
  std::size_t samples = 0;
};

/// Rejection-samples S inside D^ and reports the largest Euclidean norm found.
BallCheck check_ball_containment(const SemialgSystem& sys, std::size_t samples, std::uint64_t seed,
                                 double tol = 1e-9);

/// delta, lambda and nu as chosen in the proof of the effective Positivstellensatz.
struct CertParams {
  Rational eps;
  double loja_L = 1.0;
  Rational loja_c;
  Rational delta;
  Rational lambda;
  Rational sqrt_nu;
  Rational nu;
  Rational fstar;
  Rational norm_f;
  int r = 0;
  /// False when delta had to be rounded down from a non-integer power.
  bool delta_exact = true;
};

/**
 * delta = eps^L / c (rounded down to a dyadic rational when L is not an
 * integer), lambda = 5 ||f||_B / delta and nu = 1/k^2 for the smallest integer k
 * with nu <= min(delta/(8r), fstar/(4 r lambda), delta eps/(20 r)).
 */
CertParams putinar_params(const Rational& eps, double L, const Rational& c, int r,
                          const Rational& norm_f, const Rational& fstar);

struct CertifyOptions {
  PlateauOptions plateau;
  /// Largest Polya degree tried, regardless of the theoretical cap.
  int max_degree = 2048;
  /// Largest coefficient count allowed for p.
  std::size_t max_coefficients = 2000000;
  /// Approximate number of lattice points checked for f <= 0 on S.
  std::size_t positivity_samples = 2000;
};

struct Certificate {
  SimplexDomain dom;
  int m = 0;
  Rational lambda;
  /// Bernstein coefficients of p at degree m.
  BernsteinPoly p;
  std::vector<BernsteinPoly> s_list;
  std::vector<MonomialPoly> g_scaled;
  nlohmann::json provenance = nlohmann::json::object();
};

/// Builds f = p + lambda sum s_i^2 g_i with p >= 0 coefficientwise on D^.
Certificate build_certificate(const MonomialPoly& f, const SemialgSystem& sys, const CertParams& params,
                              const CertifyOptions& opts = {});

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const;
  /// Names of the failed checks, in order.
  std::vector<std::string> failures() const;
};

/**
 * Re-checks a certificate from its data alone: p_nonnegative, lambda_nonnegative,
 * identity (exact, in the monomial basis) and g_normalized. With a system it
 * also checks domain (same s_hat, s_hat^2 >= n) and g_matches_system.
 */
VerifyReport verify_certificate(const MonomialPoly& f, const Certificate& cert,
                                const SemialgSystem* sys = nullptr);

/// Minimum of f over S estimated by sampling and local search (not certified).
std::optional<double> estimate_fstar(const MonomialPoly& f, const SemialgSystem& sys, std::size_t samples,
                                     std::uint64_t seed);

enum class BudgetMode { FG, EG, CQC };

struct DegreeBudget {
  BudgetMode mode = BudgetMode::FG;
  /// Constant and exponent the chain is run with after the mode substitution.
  double c_eff = 0.0;
  double L_eff = 1.0;
  double eps = 0.0;
  double delta = 0.0;
  double nu = 0.0;
  double lambda = 0.0;
  /// 16384 n d^4 / (delta^2 nu) and its d^2 variant.
  double m_prime = 0.0;
  double m_prime_stated = 0.0;
  double eta = 0.0;
  double norm_p_bound = 0.0;
  /// eta^2 norm_p_bound / (f*/4).
  double m_theory = 0.0;
  double log10_m_theory = 0.0;
  /// n^2 r d^6 c^7 eps^-(7L+3) without constant.
  double asymptotic = 0.0;
  /// Exact degrees of an actual construction, when one was run.
  std::optional<int> eta_actual;
  std::optional<int> m_final;
};

struct BudgetInputs {
  int n = 1;
  int r = 0;
  int deg_g = 1;
  int deg_f = 1;
  double eps = 1.0;
  double norm_f = 1.0;
  double fstar = 1.0;
};

DegreeBudget theoretical_degree(const BudgetInputs& in, double c, double L, BudgetMode mode);
DegreeBudget theoretical_degree(const MonomialPoly& f, const SemialgSystem& sys, const Rational& fstar,
                                double c, double L, BudgetMode mode);

std::string to_string(BudgetMode mode);

}  // namespace certiposi
