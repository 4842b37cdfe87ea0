#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "certiposi/bernstein.hpp"
#include "certiposi/errors.hpp"
#include "support.hpp"

using namespace certiposi;
using certiposi::testing::mono;
using certiposi::testing::random_point;
using certiposi::testing::random_poly;

namespace {

SimplexDomain interval() { return SimplexDomain(1, Rational(1)); }

BernsteinPoly from_list(const SimplexDomain& dom, std::initializer_list<Rational> c) {
  BernsteinPoly b(dom, static_cast<int>(c.size()) - 1);
  std::copy(c.begin(), c.end(), b.coeffs().begin());
  return b;
}

std::vector<Rational> coeff_vector(const BernsteinPoly& b) {
  return {b.coeffs().begin(), b.coeffs().end()};
}

// Direct evaluation from the basis definition, independent of the library conversions.
Rational basis_sum(const BernsteinPoly& b, const std::vector<Rational>& x) {
  const auto lam = b.domain().barycentric(x);
  const auto& idx = b.index_set();
  Rational sum = 0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto a = idx[r];
    Rational t(combinatorics::multinomial(b.degree(), a));
    t *= pow(lam[0], static_cast<unsigned>(b.degree() - idx.order(r)));
    for (std::size_t j = 0; j < a.size(); ++j) t *= pow(lam[j + 1], static_cast<unsigned>(a[j]));
    sum += t * b.coeffs()[r];
  }
  return sum;
}

}  // namespace

TEST_CASE("multi-index ranking is the lexicographic position") {
  IndexSet idx(3, 4);
  CHECK(idx.size() == 35);
  for (std::size_t r = 0; r < idx.size(); ++r) CHECK(idx.rank(idx[r]) == r);
  for (std::size_t r = 1; r < idx.size(); ++r) {
    auto a = idx[r - 1];
    auto b = idx[r];
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("monomial evaluation") {
  auto p = mono(2, {{{0, 0}, 1}, {{2, 0}, -1}, {{0, 2}, -1}});
  std::vector<Rational> origin{0, 0}, edge{1, 0}, mid{Rational(1, 2), Rational(1, 2)};
  CHECK(mono_eval(p, origin) == 1);
  CHECK(mono_eval(p, edge) == 0);
  CHECK(mono_eval(p, mid) == Rational(1, 2));
  std::vector<Rational> bad{0};
  CHECK_THROWS_AS(mono_eval(p, bad), DimensionError);
}

TEST_CASE("monomial to Bernstein on the interval") {
  const auto dom = interval();
  auto one = MonomialPoly::constant(1, 1);
  for (int m = 0; m < 5; ++m) {
    auto b = mono_to_bernstein(one, m, dom);
    for (const auto& c : b.coeffs()) CHECK(c == 1);
  }
  auto x = MonomialPoly::variable(1, 0);
  auto bx = mono_to_bernstein(x, 1, dom);
  CHECK(coeff_vector(bx) == std::vector<Rational>{-1, 1});
  // (-1) B_0 + B_1 = -(1-x)/2 + (1+x)/2 = x at +-1
  for (int s : {-1, 1}) {
    std::vector<Rational> pt{s};
    CHECK(basis_sum(bx, pt) == s);
  }
  CHECK_THROWS_AS(mono_to_bernstein(x * x, 1, dom), DegreeError);
}

TEST_CASE("Bernstein to monomial") {
  const auto dom = interval();
  auto b = from_list(dom, {1, -1, 1});
  CHECK(bernstein_to_mono(b) == mono(1, {{{2}, 1}}));
  auto ones = BernsteinPoly::constant(SimplexDomain::standard(2), 3, 1);
  CHECK(bernstein_to_mono(ones) == MonomialPoly::constant(2, 1));
}

TEST_CASE("round trip on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int d = trial % 5;
    const int m = d + trial % 4;
    const auto dom = SimplexDomain::standard(n);
    auto p = random_poly(rng, n, d);
    auto b = mono_to_bernstein(p, m, dom);
    CHECK(bernstein_to_mono(b) == p);
    auto x = random_point(rng, dom);
    CHECK(bernstein_eval(b, x) == mono_eval(p, x));
    CHECK(basis_sum(b, x) == mono_eval(p, x));
  }
}

TEST_CASE("evaluation") {
  const auto dom = interval();
  std::vector<Rational> half{Rational(1, 2)};
  CHECK(bernstein_eval(from_list(dom, {1, -1, 1}), half) == Rational(1, 4));
  CHECK(bernstein_eval(BernsteinPoly::constant(dom, 4, 1), half) == 1);
  std::mt19937_64 rng(11);
  const auto dom2 = SimplexDomain::standard(2);
  auto b1 = mono_to_bernstein(random_poly(rng, 2, 3), 3, dom2);
  auto b2 = mono_to_bernstein(random_poly(rng, 2, 2), 3, dom2);
  const Rational a(-3, 7);
  auto combo = linear_combine({{a, &b1}, {Rational(1), &b2}}, 3, dom2);
  for (int i = 0; i < 10; ++i) {
    auto x = random_point(rng, dom2);
    CHECK(bernstein_eval(combo, x) == a * bernstein_eval(b1, x) + bernstein_eval(b2, x));
  }
}

TEST_CASE("degree elevation") {
  const auto dom = interval();
  auto e = elevate(from_list(dom, {-1, 1}), 2);
  CHECK(coeff_vector(e) == std::vector<Rational>{-1, 0, 1});
  for (Rational t : {Rational(-1), Rational(0), Rational(1)}) {
    std::vector<Rational> pt{t};
    CHECK(basis_sum(e, pt) == t);
  }
  auto ones = elevate(BernsteinPoly::constant(SimplexDomain::standard(3), 2, 1), 5);
  for (const auto& c : ones.coeffs()) CHECK(c == 1);
  CHECK_THROWS_AS(elevate(e, 1), DegreeError);

  std::mt19937_64 rng(3);
  const auto dom2 = SimplexDomain::standard(2);
  auto b = mono_to_bernstein(random_poly(rng, 2, 3), 3, dom2);
  auto up = elevate(b, 7);
  CHECK(bnorm(up) <= bnorm(b));
  for (int i = 0; i < 10; ++i) {
    auto x = random_point(rng, dom2);
    CHECK(bernstein_eval(up, x) == bernstein_eval(b, x));
  }
}

TEST_CASE("products") {
  const auto dom = interval();
  auto six = multiply(BernsteinPoly::constant(dom, 2, 2), BernsteinPoly::constant(dom, 3, 3));
  CHECK(six.degree() == 5);
  for (const auto& c : six.coeffs()) CHECK(c == 6);
  auto x = from_list(dom, {-1, 1});
  CHECK(coeff_vector(multiply(x, x)) == std::vector<Rational>{1, -1, 1});
  CHECK_THROWS_AS(multiply(x, from_list(SimplexDomain(1, 2), {1, 1})), DomainError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const auto d = SimplexDomain::standard(n);
    auto b1 = mono_to_bernstein(random_poly(rng, n, 2), 2 + trial % 2, d);
    auto b2 = mono_to_bernstein(random_poly(rng, n, 1), 1 + trial % 3, d);
    auto prod = multiply(b1, b2);
    CHECK(bnorm(prod) <= bnorm(b1) * bnorm(b2));
    CHECK(bernstein_to_mono(prod) == bernstein_to_mono(b1) * bernstein_to_mono(b2));
  }
}

TEST_CASE("Bernstein norm") {
  const auto dom = interval();
  CHECK(bnorm(from_list(dom, {-1, 0, 1})) == 1);
  CHECK(bnorm(BernsteinPoly::constant(dom, 3, 1)) == 1);
  auto g = mono(1, {{{0}, 1}, {{2}, -1}});
  auto b = mono_to_bernstein(g, 2, dom);
  CHECK(coeff_vector(b) == std::vector<Rational>{0, 2, 0});
  CHECK(bnorm(b) == 2);
  CHECK(bnorm(BernsteinPoly(dom, 4)) == 0);
}

TEST_CASE("linear combinations") {
  const auto dom = interval();
  auto x = from_list(dom, {-1, 1});
  CHECK(linear_combine({{Rational(1), &x}, {Rational(-1), &x}}, 3, dom).is_zero());
  auto empty = linear_combine({}, 4, dom);
  CHECK(empty.degree() == 4);
  CHECK(empty.is_zero());
  auto one = BernsteinPoly::constant(dom, 0, 1);
  auto combo = linear_combine({{Rational(2), &x}, {Rational(3), &one}}, 2, dom);
  CHECK(bernstein_to_mono(combo) == mono(1, {{{0}, 3}, {{1}, 2}}));
  CHECK_THROWS_AS(linear_combine({{Rational(1), &x}}, 0, dom), DegreeError);
}

TEST_CASE("control polygon brackets values") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const auto dom = SimplexDomain::standard(n);
    auto b = mono_to_bernstein(random_poly(rng, n, 3), 4, dom);
    const auto lo = b.min_coeff();
    const auto hi = b.max_coeff();
    for (int i = 0; i < 20; ++i) {
      auto v = bernstein_eval(b, random_point(rng, dom));
      CHECK(lo <= v);
      CHECK(v <= hi);
    }
  }
}

TEST_CASE("floating evaluator agrees with exact evaluation") {
  std::mt19937_64 rng(17);
  const auto dom = SimplexDomain::standard(2);
  auto b = elevate(mono_to_bernstein(random_poly(rng, 2, 3), 3, dom), 40);
  BernsteinEvaluator eval(b);
  for (int i = 0; i < 10; ++i) {
    auto x = random_point(rng, dom);
    std::vector<double> xd{x[0].get_d(), x[1].get_d()};
    CHECK(eval(xd) == doctest::Approx(bernstein_eval(b, x).get_d()).epsilon(1e-10));
  }
}

TEST_CASE("simplex domain") {
  CHECK_THROWS_AS(SimplexDomain(2, Rational(14, 10)), DomainError);
  auto d = SimplexDomain::standard(2);
  CHECK(d.s_hat() * d.s_hat() >= 2);
  CHECK(d.s_hat() - Rational(1414213562373, 1000000000000) <= Rational(1, 1000000000000));
  CHECK(SimplexDomain::standard(4).s_hat() == 2);
  auto lam = d.barycentric(std::vector<Rational>{0, 0});
  Rational total = 0;
  for (const auto& l : lam) total += l;
  CHECK(total == 1);
  CHECK(d.contains(std::vector<Rational>{-1, -1}));
  CHECK_FALSE(d.contains(std::vector<Rational>{-2, 0}));
  CHECK(interval().diameter() == doctest::Approx(2.0));
}
