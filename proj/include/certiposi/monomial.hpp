#pragma once

#include <map>
#include <span>
#include <vector>

#include "certiposi/multi_index.hpp"
#include "certiposi/rational.hpp"

namespace certiposi {

/**
 * Sparse multivariate polynomial with exact rational coefficients in the
 * monomial basis. Zero coefficients are never stored.
 */
class MonomialPoly {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  explicit MonomialPoly(int n);
  MonomialPoly(int n, Terms terms);

  static MonomialPoly constant(int n, const Rational& c);
  /// The coordinate function x_i (0-based).
  static MonomialPoly variable(int n, int i);

  int dim() const { return n_; }
  /// Largest |alpha| with a nonzero coefficient; 0 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  Rational coeff(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, const Rational& c);

  MonomialPoly derivative(int i) const;

  MonomialPoly operator-() const;
  MonomialPoly& operator+=(const MonomialPoly& other);
  MonomialPoly& operator-=(const MonomialPoly& other);
  MonomialPoly& operator*=(const Rational& c);
  friend MonomialPoly operator+(MonomialPoly a, const MonomialPoly& b) { return a += b; }
  friend MonomialPoly operator-(MonomialPoly a, const MonomialPoly& b) { return a -= b; }
  friend MonomialPoly operator*(MonomialPoly a, const Rational& c) { return a *= c; }
  friend MonomialPoly operator*(const Rational& c, MonomialPoly a) { return a *= c; }
  friend MonomialPoly operator*(const MonomialPoly& a, const MonomialPoly& b);
  bool operator==(const MonomialPoly& other) const { return n_ == other.n_ && terms_ == other.terms_; }

 private:
  int n_;
  Terms terms_;
};

Rational mono_eval(const MonomialPoly& p, std::span<const Rational> x);
double mono_eval(const MonomialPoly& p, std::span<const double> x);

}  // namespace certiposi
