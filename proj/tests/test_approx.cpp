#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "certiposi/approx.hpp"
#include "certiposi/errors.hpp"
#include "support.hpp"

using namespace certiposi;
using certiposi::testing::mono;
using certiposi::testing::random_rational;

namespace {

SimplexDomain interval() { return SimplexDomain(1, Rational(1)); }

SampleFunction from_poly(const MonomialPoly& p) {
  return {[p](std::span<const Rational> x) { return mono_eval(p, x); }, std::nullopt};
}

}  // namespace

TEST_CASE("Bernstein operator reproduces constants and affine functions") {
  const auto dom = interval();
  auto c = bernstein_operator(from_poly(MonomialPoly::constant(1, Rational(7, 3))), 5, dom);
  for (const auto& v : c.coeffs()) CHECK(v == Rational(7, 3));
  auto x = MonomialPoly::variable(1, 0);
  CHECK(bernstein_to_mono(bernstein_operator(from_poly(x), 3, dom)) == x);

  std::mt19937_64 rng(23);
  for (int n = 1; n <= 3; ++n) {
    const auto d = SimplexDomain::standard(n);
    MonomialPoly aff = MonomialPoly::constant(n, random_rational(rng));
    for (int j = 0; j < n; ++j) aff += random_rational(rng) * MonomialPoly::variable(n, j);
    for (int m : {1, 2, 5}) CHECK(bernstein_to_mono(bernstein_operator(from_poly(aff), m, d)) == aff);
  }
  CHECK_THROWS_AS(bernstein_operator(from_poly(x), 0, dom), DegreeError);
}

TEST_CASE("Bernstein operator on a square") {
  // samples (x+1)^2 at -1, 0, 1 are 0, 1, 4; on the unit interval B_2(u^2) = u^2/2 + u/2
  const auto dom = interval();
  auto sq = mono(1, {{{0}, 1}, {{1}, 2}, {{2}, 1}});
  auto b = bernstein_operator(from_poly(sq), 2, dom);
  CHECK(std::vector<Rational>(b.coeffs().begin(), b.coeffs().end()) == std::vector<Rational>{0, 1, 4});
  auto exact = Rational(1, 2) * sq + mono(1, {{{0}, 1}, {{1}, 1}});
  CHECK(bernstein_to_mono(b) == exact);
  // the closed form with (n + s)^2 / m in place of the linear term is an upper bound, tight at x = 1
  auto upper = Rational(1, 2) * sq + MonomialPoly::constant(1, 2);
  CHECK(bernstein_to_mono(b) != upper);
  for (int k = -4; k <= 4; ++k) {
    std::vector<Rational> pt{Rational(k, 4)};
    CHECK(bernstein_eval(b, pt) <= mono_eval(upper, pt));
  }
}

TEST_CASE("positivity of the Bernstein operator") {
  auto sq = mono(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{1, 1}, -1}});
  auto b = bernstein_operator(from_poly(sq), 4, SimplexDomain::standard(2));
  CHECK(b.all_nonnegative());
}

TEST_CASE("approximation error bound") {
  SampleFunction zero{[](std::span<const Rational>) { return Rational(0); }, 0.0};
  CHECK(approx_error_bound(zero, 16, 1) == 0.0);
  SampleFunction lip1{[](std::span<const Rational> x) { return abs(x[0]); }, 1.0};
  CHECK(approx_error_bound(lip1, 16, 1) == doctest::Approx(1.0));
  SampleFunction no_lip{[](std::span<const Rational>) { return Rational(0); }, std::nullopt};
  CHECK_THROWS_AS(approx_error_bound(no_lip, 4, 1), InputError);

  const auto dom = interval();
  auto b = bernstein_operator(lip1, 64, dom);
  BernsteinEvaluator eval(b);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double x = -1.0 + 2.0 * i / 1000.0;
    worst = std::max(worst, std::fabs(eval(std::span<const double>(&x, 1)) - std::fabs(x)));
  }
  CHECK(worst > 0.0);
  CHECK(worst <= approx_error_bound(lip1, 64, 1));
}

TEST_CASE("plateau function") {
  PlateauSpec spec{Rational(1, 4), Rational(1, 8), std::nullopt};
  CHECK(phi_eval(spec, -spec.delta) == 1);
  CHECK(phi_eval(spec, Rational(-1)) == 1);
  CHECK(phi_eval(spec, Rational(0)) == spec.sqrt_nu);
  CHECK(phi_eval(spec, Rational(1, 2)) == spec.sqrt_nu);
  CHECK(phi_eval(spec, -spec.delta / 2) == (1 + spec.sqrt_nu) / 2);
  CHECK_THROWS_AS(phi_eval(spec, Rational(3, 2)), DomainError);
  // C^1 with |phi'| <= 2 / delta, by central differences of the double version
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double t = -1.0 + 2.0 * i / 1000.0;
    const double h = 1e-7;
    worst = std::max(worst, std::fabs(phi_eval(spec, t + h) - phi_eval(spec, t - h)) / (2 * h));
  }
  CHECK(worst <= 2.0 / spec.delta.get_d() + 1e-6);
  for (int k = -8; k <= 8; ++k) {
    Rational t(k, 8);
    CHECK(phi_eval(spec, t).get_d() == doctest::Approx(phi_eval(spec, t.get_d())));
  }
  PlateauSpec big{Rational(1), Rational(3, 2), std::nullopt};
  CHECK_THROWS_AS(big.validate(), InputError);
  PlateauSpec zero_delta{Rational(0), Rational(1, 2), std::nullopt};
  CHECK_THROWS_AS(zero_delta.validate(), InputError);
}

TEST_CASE("plateau on a nonnegative constraint") {
  // g = (3 + x1 + x2)/||.||_B is >= 0 on the whole simplex
  const auto dom = SimplexDomain::standard(2);
  auto raw = mono(2, {{{0, 0}, 3}, {{1, 0}, 1}, {{0, 1}, 1}});
  auto g = raw * (1 / bnorm(mono_to_bernstein(raw, 1, dom)));
  PlateauSpec spec{Rational(1, 4), Rational(1, 8), std::nullopt};
  PlateauOptions opts;
  opts.grid_points = 1000;
  auto res = build_plateau(g, spec, dom, opts);
  CHECK(res.grid_error <= res.target);
  CHECK(bnorm(res.s) <= 1);
  BernsteinEvaluator s(res.s);
  for (const auto& x : lattice_points_double(dom, lattice_resolution(2, 1000))) {
    const double v = s(x);
    CHECK(v * v <= 2.0 * spec.nu().get_d());
  }
}

TEST_CASE("plateau on a sign-changing constraint") {
  const auto dom = interval();
  auto g = mono(1, {{{1}, -1}});
  PlateauSpec spec{Rational(1, 4), Rational(1, 8), std::nullopt};
  auto res = build_plateau(g, spec, dom);
  CHECK(res.grid_error <= res.target);
  CHECK(res.error_bound >= res.grid_error);
  BernsteinEvaluator s(res.s);
  for (int i = 0; i <= 1000; ++i) {
    double x = -1.0 + 2.0 * i / 1000.0;
    const double v = s(std::span<const double>(&x, 1));
    if (-x <= -0.25) CHECK(v * v >= 0.5);
    if (-x >= 0.0) CHECK(v * v <= 2.0 * spec.nu().get_d());
  }
  auto h = multiply(res.s, res.s);
  CHECK(bnorm(h) <= 1);

  PlateauOptions tight;
  tight.max_degree = 2;
  CHECK_THROWS_AS(build_plateau(g, spec, dom, tight), BudgetExceeded);
  PlateauOptions worst;
  worst.worst_case = true;
  CHECK_THROWS_AS(build_plateau(g, spec, dom, worst), BudgetExceeded);
}

TEST_CASE("closed-form degree calculators") {
  CHECK(markov_bound(0, 3) == 0.0);
  CHECK(markov_bound(1, 1) == doctest::Approx(1.0));
  CHECK(markov_bound(2, 4) == doctest::Approx(4.0));
  CHECK(polya_degree(0, Rational(5), Rational(1)) == 0);
  CHECK(polya_degree(2, Rational(4), Rational(1)) == 16);
  CHECK(polya_degree(1, Rational(1), Rational(1)) == 1);
  CHECK_THROWS_AS(polya_degree(2, Rational(1), Rational(0)), InputError);
  // 16384 * 1 * 1 / ((1/4)^2 (1/64))
  CHECK(plateau_worst_case_degree(1, 1, Rational(1, 4), Rational(1, 64)) == 16384 * 16 * 64);
  CHECK(plateau_worst_case_degree(1, 2, Rational(1), Rational(1)) == 16384 * 16);
  CHECK(plateau_stated_degree(1, 2, Rational(1), Rational(1)) == 16384 * 4);
}

TEST_CASE("Polya elevation of positive quadratics") {
  std::mt19937_64 rng(29);
  const auto dom = SimplexDomain::standard(2);
  for (int trial = 0; trial < 5; ++trial) {
    // (x1 - a)^2 + (x2 - b)^2 + c with c > 0 is bounded below by c
    const Rational a = random_rational(rng), b = random_rational(rng);
    const Rational c(1 + trial, 4);
    auto p = mono(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{1, 0}, -2 * a}, {{0, 1}, -2 * b},
                      {{0, 0}, a * a + b * b + c}});
    auto bp = mono_to_bernstein(p, 2, dom);
    auto m = polya_degree(2, bnorm(bp), c);
    if (m > 400) continue;
    CHECK(elevate(bp, static_cast<int>(std::max<long>(2, m.get_si()))).all_nonnegative());
  }
}
