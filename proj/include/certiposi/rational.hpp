#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace certiposi {

using Rational = mpq_class;
using Integer = mpz_class;

/**
 * Parses an exact rational from "p/q", an integer, or a decimal such as
 * "-0.125" or "1.5e-3". Throws InputError on malformed text or a zero
 * denominator.
 */
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Integer floor_div(const Rational& q);
Integer ceil_div(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Smallest k / 10^digits with (k / 10^digits)^2 >= x, for x >= 0.
Rational sqrt_ceil_decimal(const Rational& x, int digits);

/// Largest k / 2^bits not exceeding v (v finite).
Rational floor_dyadic(double v, int bits);

/// Exact conversion of a finite double.
Rational from_double(double v);

}  // namespace certiposi
