#include "certiposi/rational.hpp"

#include <cctype>
#include <cmath>

#include "certiposi/errors.hpp"

namespace certiposi {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw InputError("malformed rational: \"" + std::string(whole) + "\"");
  }
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  long exponent = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1), whole).get_si();
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string digits(s.substr(0, dot));
  if (dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    digits += frac;
    exponent -= static_cast<long>(frac.size());
  }
  if (!all_digits(digits)) {
    throw InputError("malformed rational: \"" + std::string(whole) + "\"");
  }
  Rational q(Integer(digits, 10));
  if (std::labs(exponent) > 4096) {
    throw InputError("exponent out of range: \"" + std::string(whole) + "\"");
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) {
    q *= scale;
  } else {
    q /= scale;
  }
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw InputError("empty rational");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) {
      throw InputError("zero denominator in rational: \"" + std::string(text) + "\"");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Integer floor_div(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_div(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

Rational sqrt_ceil_decimal(const Rational& x, int digits) {
  if (x < 0) throw InputError("square root of a negative rational");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // k = ceil(sqrt(x) * scale) = ceil(sqrt(x * scale^2))
  Integer target = ceil_div(x * scale * scale);
  Integer k;
  mpz_sqrt(k.get_mpz_t(), target.get_mpz_t());
  while (Rational(k * k, scale * scale) < x) ++k;
  Rational r(k, scale);
  r.canonicalize();
  return r;
}

Rational floor_dyadic(double v, int bits) {
  if (!std::isfinite(v)) throw InputError("non-finite value");
  double scaled = std::floor(std::ldexp(v, bits));
  Rational r(from_double(scaled));
  Integer two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  r /= two;
  r.canonicalize();
  return r;
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value");
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace certiposi
