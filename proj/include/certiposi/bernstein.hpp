#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "certiposi/monomial.hpp"
#include "certiposi/multi_index.hpp"
#include "certiposi/rational.hpp"
#include "certiposi/simplex.hpp"

namespace certiposi {

/**
 * A polynomial in the degree-m Bernstein basis of a simplex D^:
 *
 *   f = sum_{|alpha| <= m} f_alpha B_{m,alpha},
 *   B_{m,alpha} = C(m, alpha) lambda_0^{m - |alpha|} lambda_1^{alpha_1} ... lambda_n^{alpha_n}.
 *
 * Coefficients are stored densely in the lexicographic order of IndexSet.
 * The zero polynomial is the all-zero vector at any degree.
 */
class BernsteinPoly {
 public:
  BernsteinPoly(SimplexDomain dom, int m);

  static BernsteinPoly constant(const SimplexDomain& dom, int m, const Rational& c);

  const SimplexDomain& domain() const { return dom_; }
  int dim() const { return dom_.dim(); }
  int degree() const { return m_; }
  const IndexSet& index_set() const { return *idx_; }

  Rational coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, const Rational& c);

  std::span<const Rational> coeffs() const { return c_; }
  std::span<Rational> coeffs() { return c_; }

  bool is_zero() const;
  bool all_nonnegative() const;
  Rational min_coeff() const;
  Rational max_coeff() const;

  bool operator==(const BernsteinPoly& other) const {
    return dom_ == other.dom_ && m_ == other.m_ && c_ == other.c_;
  }

 private:
  SimplexDomain dom_;
  int m_;
  std::shared_ptr<const IndexSet> idx_;
  std::vector<Rational> c_;
};

/**
 * The same polynomial written as a homogeneous form in the barycentric
 * coordinates: f = sum_beta (w_beta / den) lambda^beta, so that
 * w_beta = den * f_beta * C(m, beta). All w are integers and den > 0, so
 * degree elevation and products reduce to integer additions and
 * convolutions, and sign(w_beta) = sign(f_beta).
 */
struct HomogeneousForm {
  int n = 1;
  int m = 0;
  std::vector<Integer> w;
  Integer den = 1;

  bool all_nonnegative() const;
};

HomogeneousForm to_homogeneous(const BernsteinPoly& b);
BernsteinPoly from_homogeneous(const SimplexDomain& dom, const HomogeneousForm& h);
/// Multiplies by (lambda_0 + ... + lambda_n)^(target - m).
void elevate_in_place(HomogeneousForm& h, int target);
HomogeneousForm multiply(const HomogeneousForm& a, const HomogeneousForm& b);

BernsteinPoly mono_to_bernstein(const MonomialPoly& p, int m, const SimplexDomain& dom);
MonomialPoly bernstein_to_mono(const BernsteinPoly& b);

Rational bernstein_eval(const BernsteinPoly& b, std::span<const Rational> x);

/// Representation of the same polynomial at degree m2 >= b.degree().
BernsteinPoly elevate(const BernsteinPoly& b, int m2);

BernsteinPoly multiply(const BernsteinPoly& a, const BernsteinPoly& b);

/// max_alpha |f_alpha|
Rational bnorm(const BernsteinPoly& b);

/// Elevates every term to degree m and combines coefficientwise.
BernsteinPoly linear_combine(const std::vector<std::pair<Rational, const BernsteinPoly*>>& terms,
                             int m, const SimplexDomain& dom);

/**
 * Floating-point evaluation of a Bernstein polynomial, for sampling checks.
 * Each basis function is evaluated in log space, so moderate-to-large
 * degrees are safe from overflow.
 */
class BernsteinEvaluator {
 public:
  explicit BernsteinEvaluator(const BernsteinPoly& b);

  double operator()(std::span<const double> x) const;

 private:
  int n_;
  int m_;
  double s_hat_;
  std::shared_ptr<const IndexSet> idx_;
  std::vector<double> coeff_;
  std::vector<double> log_multinomial_;
};

}  // namespace certiposi
