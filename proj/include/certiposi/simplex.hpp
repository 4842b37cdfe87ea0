#pragma once

#include <span>
#include <vector>

#include "certiposi/monomial.hpp"
#include "certiposi/rational.hpp"

namespace certiposi {

/**
 * The simplex D^ = {x : 1 + x_i >= 0, s_hat - sum x_i >= 0}, a rational
 * stand-in for the simplex with s_hat = sqrt(n). Requires s_hat^2 >= n so
 * that D^ contains the unit ball.
 *
 * Barycentric coordinates are ordered (lambda_0, ..., lambda_n) with
 * lambda_0 = (s_hat - sum x) / (n + s_hat) and lambda_j = (1 + x_j) / (n + s_hat).
 */
class SimplexDomain {
 public:
  SimplexDomain(int n, Rational s_hat);

  /// s_hat = sqrt(n) rounded up at 12 decimal digits.
  static SimplexDomain standard(int n);
  static Rational default_s_hat(int n);

  int dim() const { return n_; }
  const Rational& s_hat() const { return s_hat_; }
  /// n + s_hat, the edge scale of the affine map theta.
  Rational scale() const { return Rational(n_) + s_hat_; }

  std::vector<Rational> barycentric(std::span<const Rational> x) const;
  std::vector<double> barycentric(std::span<const double> x) const;

  /// theta(u) = (n + s_hat) u - 1, mapping the unit simplex onto D^.
  std::vector<Rational> theta(std::span<const Rational> u) const;

  bool contains(std::span<const Rational> x) const;
  bool contains(std::span<const double> x, double tol = 0.0) const;

  /// The n + 1 affine generators: s_hat - sum x, then 1 + x_j.
  std::vector<MonomialPoly> generators() const;

  std::vector<std::vector<double>> vertices() const;
  /// Largest vertex-to-vertex distance.
  double diameter() const;

  bool operator==(const SimplexDomain& other) const {
    return n_ == other.n_ && s_hat_ == other.s_hat_;
  }

 private:
  int n_;
  Rational s_hat_;
};

/// theta(alpha / k) for all |alpha| <= k, in lexicographic order of alpha.
std::vector<std::vector<Rational>> lattice_points(const SimplexDomain& dom, int k);
std::vector<std::vector<double>> lattice_points_double(const SimplexDomain& dom, int k);

/// Smallest lattice resolution k with C(k + n, n) >= target.
int lattice_resolution(int n, std::size_t target);

}  // namespace certiposi
