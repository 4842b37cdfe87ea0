#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "certiposi/certify.hpp"
#include "certiposi/monomial.hpp"
#include "certiposi/rational.hpp"

namespace certiposi {

/// Double-precision copy of a MonomialPoly with first and second derivatives.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const MonomialPoly& p);

  int dim() const { return n_; }
  int degree() const { return degree_; }
  double operator()(std::span<const double> x) const;
  Eigen::VectorXd gradient(std::span<const double> x) const;
  Eigen::MatrixXd hessian(std::span<const double> x) const;

 private:
  struct Term {
    std::vector<int> exp;
    double coef;
  };
  int n_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

struct LojaOptions {
  std::uint64_t seed = 1;
  /// |g_i(z)| <= tau_act marks g_i active at z.
  double tau_act = 1e-7;
  /// Constraint violation tolerated for a projection candidate.
  double feas_tol = 1e-10;
  /// Relative residual allowed in y - z = -J lambda.
  double kkt_tol = 1e-8;
  int rays_per_dim = 64;
  /// Points sampled to seed projections and find an interior point of S.
  std::size_t cloud_points = 4000;
  /// Lattice size for the minimization of G outside U.
  std::size_t grid_points = 100000;
  /// Uniform samples for the empirical ratios (boundary probes are added).
  std::size_t samples = 2000;
};

struct Projection {
  double distance = 0.0;
  std::vector<double> z;
  /// Indices of the g_i active at z.
  std::vector<int> active;
  /// True when no local solve beat the nearest sampled feasible point.
  bool from_cloud = false;
};

/**
 * Euclidean projection onto S = {x in D^ : g(x) >= 0}. Candidates come from
 * Newton solves of the equality-constrained problem for every set of at most n
 * constraints (the g_i and the facets of D^), started from x and the nearest
 * sampled feasible point; the closest feasible candidate wins.
 */
class Projector {
 public:
  Projector(const SemialgSystem& sys, const LojaOptions& opts = {});

  Projection project(std::span<const double> x) const;
  double G(std::span<const double> x) const;
  /// min_i g_i(x), +inf without constraints.
  double min_g(std::span<const double> x) const;
  bool feasible(std::span<const double> x, double tol = 0.0) const;

  const std::vector<NumericPoly>& g() const { return g_; }
  const std::vector<std::vector<double>>& cloud() const { return cloud_; }
  void add_feasible(std::vector<double> p) { cloud_.push_back(std::move(p)); }
  int dim() const { return n_; }
  const SimplexDomain& domain() const { return dom_; }

 private:
  std::optional<std::vector<double>> solve_active(std::span<const double> x, const std::vector<int>& set,
                                                  std::span<const double> start) const;
  double min_constraint(std::span<const double> z) const;

  int n_;
  SimplexDomain dom_;
  LojaOptions opts_;
  std::vector<NumericPoly> g_;
  /// g_ followed by the n + 1 facets of D^.
  std::vector<NumericPoly> all_;
  std::vector<std::vector<int>> subsets_;
  std::vector<std::vector<double>> cloud_;
};

/// -min((f(x) - fstar) / normB_f, 0).
double eval_F(const MonomialPoly& f, const Rational& fstar, const Rational& normB_f, std::span<const double> x);
/// -min(g_1(x), ..., g_r(x), 0) for the constraints of sys as stored (normally scaled).
double eval_G(const SemialgSystem& sys, std::span<const double> x);
Projection eval_E(const SemialgSystem& sys, std::span<const double> x, const LojaOptions& opts = {});

std::vector<int> active_set(const SemialgSystem& sys, std::span<const double> z, double tau_act = 1e-7);
/// Smallest singular value of the gradients of g_I at z; +inf for I empty.
double jacobian_sigma(const SemialgSystem& sys, std::span<const double> z, const std::vector<int>& I);

struct SigmaEstimate {
  double sigma = std::numeric_limits<double>::infinity();
  std::vector<double> point;
  std::vector<int> active;
  std::vector<double> interior;
  /// Boundary points found along rays, with the ray direction at each.
  std::vector<std::vector<double>> boundary;
  std::vector<std::vector<double>> directions;
  int rays = 0;
  /// Rays that left D^ before leaving S.
  int rays_exiting = 0;
};

SigmaEstimate sigma_J(const SemialgSystem& sys, const LojaOptions& opts = {});
/// max_i max over D^ of ||Hess g_i||_2: exact below degree 3, a Bernstein bound above.
double hessian_bound_c2(const SemialgSystem& sys);

struct DistanceSample {
  std::vector<double> x;
  double F = 0.0;
  double G = 0.0;
  double E = 0.0;
  std::vector<int> active_set_at_projection;
};

struct Objective {
  MonomialPoly f;
  Rational fstar;
  Rational norm_f;
};

/// Uniform samples of D^ plus probes at geometric distances outside the boundary points.
std::vector<DistanceSample> distance_samples(const Projector& proj, const SigmaEstimate& sigma,
                                             const LojaOptions& opts, const Objective* obj = nullptr);

enum class LojaPair { EG, FG };

struct LojaFit {
  double L_hat = 1.0;
  double c_hat = 0.0;
  std::size_t samples_used = 0;
  /// Slope of log(X^L / G) against log X on the smallest quarter of X at L_hat.
  double tail_slope = 0.0;
};

LojaFit empirical_loja_fit(const std::vector<DistanceSample>& samples, LojaPair pair);

struct EckartYoungWitness {
  std::vector<double> z;
  std::vector<int> active;
  /// Affine l_i(x) = l0[k] + <l1[k], x>, one per active constraint.
  std::vector<double> l0;
  std::vector<std::vector<double>> l1;
  /// Euclidean norm of all coefficients of l.
  double norm = 0.0;
  /// Smallest singular value of the active Jacobian of g - l at z.
  double sigma_after = 0.0;
};

struct ConditionBound {
  double c1 = 0.0;
  /// sqrt(2) sigma_J, standing in for dist(g, Sing).
  double dist_proxy = 0.0;
  double first_term = 0.0;
  double second_term = 0.0;
  double value = 0.0;
  std::optional<EckartYoungWitness> witness;
};

struct LojaReport {
  int n = 0;
  int r = 0;
  bool degenerate = false;
  double sigma_J = std::numeric_limits<double>::infinity();
  std::vector<double> sigma_point;
  double c2 = 0.0;
  /// sigma_J / (2 c2); empty when c2 = 0.
  std::optional<double> U_radius;
  /// min of G over D^ minus U; empty when that set has no grid point.
  std::optional<double> G_star;
  std::vector<double> G_star_point;
  double diam_D = 0.0;
  double diam_formula = 0.0;
  double c_EG_bound = 0.0;
  ConditionBound cond;
  double sup_E_over_G = 0.0;
  std::size_t near_boundary_violations = 0;
  std::optional<LojaFit> fit_EG;
  std::optional<LojaFit> fit_FG;
  // sampling metadata
  std::uint64_t seed = 0;
  int rays = 0;
  int rays_exiting = 0;
  std::size_t grid_points = 0;
  std::size_t projections = 0;
  std::size_t samples = 0;
  double tau_act = 0.0;
  double feas_tol = 0.0;
  double kkt_tol = 0.0;
  std::vector<std::string> notes;
};

/**
 * The operations above use the constraints of sys as stored. The report and the
 * condition bound normalize an unscaled system first.
 */
LojaReport loja_EG_constant(const SemialgSystem& sys, const LojaOptions& opts = {},
                            const Objective* obj = nullptr);

ConditionBound condition_bound(const SemialgSystem& sys, const LojaReport& report);

struct KKTData {
  Eigen::VectorXd y, z;
  std::vector<int> I;
  Eigen::MatrixXd J;
  Eigen::MatrixXd N_I;
  Eigen::VectorXd lambda_vec;
  Eigen::VectorXd gamma, gamma_minus, gamma_plus;
  Eigen::VectorXd g_minus, g_plus;
  Eigen::VectorXd h;
  double sigma_min = 0.0;
  double residual = 0.0;
  double c2 = 0.0;

  double distance() const { return (y - z).norm(); }
  /// ||y - z|| <= ||gamma_-|| / sigma_min, within tol.
  bool basic_inequality(double tol) const;
  /// <gamma_-, gamma> >= 0 and <gamma_+, gamma> <= 0 in the N_I^-1 inner product.
  bool gamma_signs(double tol) const;
  /// | ||g_-|| - ||gamma_-|| | <= c2 ||y - z||^2, within tol.
  bool small_diff(double tol) const;
};

KKTData kkt_certificate(const SemialgSystem& sys, std::span<const double> y, const LojaOptions& opts = {});

struct CertLojaResult {
  double c = 0.0;
  std::vector<double> argmax;
  std::size_t grid_points = 0;
};

/**
 * (1/normB_f) max over a lattice of D^ of sum_i ||g_i||_B s_i(x), where
 * f - fstar = s_0 + sum_i s_i g_i with s_i >= 0 on D^ and g_i as stored in sys.
 */
CertLojaResult cert_loja_constant(const SemialgSystem& sys, const std::vector<MonomialPoly>& s_list,
                                  const MonomialPoly& f, const Rational& normB_f,
                                  std::size_t grid_points = 1000);

struct ExponentBound {
  double value = 0.0;
  std::string note;
};

/// d (6d - 3)^(n + r).
ExponentBound exponent_formula_bounds(int n, int r, int d);

}  // namespace certiposi
