#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "certiposi/errors.hpp"
#include "certiposi/loja.hpp"
#include "certiposi/sampling.hpp"
#include "support.hpp"

using namespace certiposi;
using certiposi::testing::mono;

namespace {

SemialgSystem system_of(const SimplexDomain& dom, std::vector<MonomialPoly> g) {
  SemialgSystem s{dom, std::move(g), {}};
  for (std::size_t i = 0; i < s.g.size(); ++i) s.names.push_back("g" + std::to_string(i + 1));
  return s;
}

SimplexDomain interval() { return SimplexDomain(1, Rational(1)); }

// g = (1 - x^2)/2, already of Bernstein norm 1 on [-1, 1]
SemialgSystem interval_system() {
  auto s = system_of(interval(), {mono(1, {{{0}, Rational(1, 2)}, {{2}, Rational(-1, 2)}})});
  return normalize_system(s);
}

SemialgSystem disk_raw() {
  return system_of(SimplexDomain::standard(2), {mono(2, {{{0, 0}, 1}, {{2, 0}, -1}, {{0, 2}, -1}})});
}

SemialgSystem golden() { return system_of(interval(), {mono(1, {{{0}, Rational(1, 4)}, {{2}, -1}})}); }

LojaOptions quick() {
  LojaOptions o;
  o.grid_points = 20000;
  o.samples = 500;
  o.cloud_points = 1000;
  return o;
}

}  // namespace

TEST_CASE("F and G") {
  auto sys = interval_system();
  double two = 2.0;
  CHECK(eval_G(sys, std::span<const double>(&two, 1)) == doctest::Approx(1.5));
  double half = 0.5;
  CHECK(eval_G(sys, std::span<const double>(&half, 1)) == 0.0);
  auto f = mono(1, {{{0}, 2}, {{1}, 1}});
  double m1 = -1.0;
  CHECK(eval_F(f, Rational(1), Rational(3), std::span<const double>(&m1, 1)) == 0.0);
  CHECK(eval_F(f, Rational(2), Rational(3), std::span<const double>(&m1, 1)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937_64 rng(41);
  Rng prng(5);
  for (int n = 1; n <= 3; ++n) {
    const auto dom = SimplexDomain::standard(n);
    for (int trial = 0; trial < 5; ++trial) {
      NumericPoly p(certiposi::testing::random_poly(rng, n, 4));
      const auto x = uniform_point(prng, dom);
      const auto grad = p.gradient(x);
      const auto H = p.hessian(x);
      const double h = 1e-6;
      for (int j = 0; j < n; ++j) {
        auto xp = x, xm = x;
        xp[static_cast<std::size_t>(j)] += h;
        xm[static_cast<std::size_t>(j)] -= h;
        const double fd = (p(xp) - p(xm)) / (2 * h);
        CHECK(std::fabs(fd - grad(j)) <= 1e-4 * std::max(1.0, std::fabs(grad(j))));
        const auto gp = p.gradient(xp), gm = p.gradient(xm);
        for (int k = 0; k < n; ++k) {
          const double fdh = (gp(k) - gm(k)) / (2 * h);
          CHECK(std::fabs(fdh - H(j, k)) <= 1e-4 * std::max(1.0, std::fabs(H(j, k))));
        }
      }
    }
  }
}

TEST_CASE("projections") {
  auto sys = interval_system();
  double y = 1.5;
  auto p = eval_E(sys, std::span<const double>(&y, 1));
  CHECK(p.distance == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.z[0] == doctest::Approx(1.0).epsilon(1e-12));
  double in = 0.25;
  CHECK(eval_E(sys, std::span<const double>(&in, 1)).distance == 0.0);

  std::vector<double> out{2.0, 0.0};
  auto q = eval_E(disk_raw(), out);
  CHECK(q.distance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.z[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(q.z[1]) < 1e-12);
  CHECK(q.active == std::vector<int>{0});

  auto none = system_of(interval(), {mono(1, {{{0}, -2}, {{1}, 1}})});
  CHECK_THROWS_AS(eval_E(none, std::span<const double>(&in, 1)), NumericError);
}

TEST_CASE("active sets and singular values") {
  auto sys = interval_system();
  double one = 1.0, zero = 0.0;
  auto I = active_set(sys, std::span<const double>(&one, 1));
  CHECK(I == std::vector<int>{0});
  CHECK(jacobian_sigma(sys, std::span<const double>(&one, 1), I) == doctest::Approx(1.0));
  auto interior = active_set(sys, std::span<const double>(&zero, 1));
  CHECK(interior.empty());
  CHECK(std::isinf(jacobian_sigma(sys, std::span<const double>(&zero, 1), interior)));
  std::vector<double> z{1.0, 0.0};
  CHECK(jacobian_sigma(disk_raw(), z, active_set(disk_raw(), z)) == doctest::Approx(2.0));

  auto twice = system_of(interval(), {sys.g[0], sys.g[0]});
  CHECK_THROWS_AS(jacobian_sigma(twice, std::span<const double>(&one, 1), {0, 1}), NumericError);
}

TEST_CASE("sigma_J and c2") {
  CHECK(sigma_J(interval_system(), quick()).sigma == doctest::Approx(1.0).epsilon(1e-12));
  auto g = normalize_system(golden());
  CHECK(sigma_J(g, quick()).sigma == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sigma_J(disk_raw(), quick()).sigma == doctest::Approx(2.0).epsilon(1e-9));

  CHECK(hessian_bound_c2(interval_system()) == doctest::Approx(1.0));
  CHECK(hessian_bound_c2(g) == doctest::Approx(1.6));
  auto linear = system_of(interval(), {mono(1, {{{0}, 1}, {{1}, -1}})});
  CHECK(hessian_bound_c2(linear) == 0.0);
  // cubic: bounded through the Bernstein coefficients of g'' = -6x on [-1, 1]
  auto cubic = system_of(interval(), {mono(1, {{{0}, 1}, {{3}, -1}})});
  CHECK(hessian_bound_c2(cubic) == doctest::Approx(6.0));
}

TEST_CASE("golden interval instance") {
  auto rep = loja_EG_constant(golden());
  CHECK(std::fabs(rep.sigma_J - 0.8) < 1e-10);
  CHECK(std::fabs(rep.c2 - 1.6) < 1e-10);
  REQUIRE(rep.U_radius.has_value());
  CHECK(std::fabs(*rep.U_radius - 0.25) < 1e-10);
  REQUIRE(rep.G_star.has_value());
  CHECK(std::fabs(*rep.G_star - 0.25) < 1e-10);
  CHECK(rep.diam_D == doctest::Approx(2.0));
  CHECK(std::fabs(rep.c_EG_bound - 8.0) < 1e-9);
  // E/G = 5 / (4 (|x| + 1/2)) outside S, so the supremum 5/4 is approached at the boundary
  CHECK(rep.sup_E_over_G >= 1.0);
  CHECK(rep.sup_E_over_G <= 1.25 + 1e-9);
  CHECK(rep.sup_E_over_G <= rep.c_EG_bound);
  CHECK(rep.near_boundary_violations == 0);
  REQUIRE(rep.fit_EG.has_value());
  CHECK(rep.fit_EG->L_hat == 1.0);
  CHECK(rep.fit_EG->c_hat == doctest::Approx(1.25).epsilon(1e-3));
  // c1 = 2 sqrt 2, proxy = sqrt 2 * 4/5, curvature term 8 * 2 * 8/5 / (32/25) = 20
  CHECK(rep.cond.first_term == doctest::Approx(2.5));
  CHECK(rep.cond.second_term == doctest::Approx(20.0));
  CHECK(rep.cond.value == doctest::Approx(20.0));
}

TEST_CASE("report on the disk") {
  auto raw = disk_raw();
  auto rep = loja_EG_constant(raw, quick());
  const double norm = bernstein_norm(raw.g[0], raw.dom).get_d();
  CHECK(rep.sigma_J == doctest::Approx(2.0 / norm).epsilon(1e-8));
  CHECK(rep.c2 == doctest::Approx(2.0 / norm));
  CHECK(rep.sup_E_over_G <= rep.c_EG_bound);
  CHECK(rep.near_boundary_violations == 0);
  CHECK(rep.diam_D == doctest::Approx(rep.diam_formula).epsilon(1e-9));
}

TEST_CASE("degenerate and linear reports") {
  auto all = system_of(interval(), {mono(1, {{{0}, 3}, {{1}, 1}})});
  auto rep = loja_EG_constant(all, quick());
  CHECK(rep.degenerate);
  CHECK(rep.sup_E_over_G == 0.0);
  CHECK_THROWS_AS(condition_bound(all, rep), InputError);

  // a half-space cut: E is proportional to G, so the exponent is one
  auto half = system_of(SimplexDomain::standard(2), {mono(2, {{{0, 0}, Rational(1, 2)}, {{1, 0}, -1}})});
  auto lin = loja_EG_constant(half, quick());
  CHECK_FALSE(lin.U_radius.has_value());
  CHECK_FALSE(lin.G_star.has_value());
  REQUIRE(lin.fit_EG.has_value());
  CHECK(lin.fit_EG->L_hat == 1.0);
  CHECK(lin.cond.second_term == 0.0);
  CHECK(lin.cond.value == doctest::Approx(lin.cond.first_term));
}

TEST_CASE("Eckart-Young witness") {
  for (const auto& sys : {golden(), disk_raw()}) {
    auto rep = loja_EG_constant(sys, quick());
    REQUIRE(rep.cond.witness.has_value());
    const auto& w = *rep.cond.witness;
    CHECK(w.sigma_after < 1e-8);
    CHECK(w.norm <= std::sqrt(2.0) * rep.sigma_J + 1e-10);
    for (std::size_t k = 0; k < w.l0.size(); ++k) {
      double v = w.l0[k];
      for (std::size_t j = 0; j < w.z.size(); ++j) v += w.l1[k][j] * w.z[j];
      CHECK(std::fabs(v) < 1e-12);
    }
  }
}

TEST_CASE("KKT data") {
  std::vector<double> y{2.0, 0.0};
  auto k = kkt_certificate(disk_raw(), y);
  CHECK(k.lambda_vec(0) == doctest::Approx(0.5));
  CHECK(k.gamma(0) == doctest::Approx(-2.0));
  CHECK(k.distance() == doctest::Approx(1.0));
  CHECK(k.sigma_min == doctest::Approx(2.0));
  CHECK(k.basic_inequality(1e-12));
  CHECK(k.gamma_signs(1e-12));
  CHECK(k.small_diff(1e-12));
  CHECK((k.N_I - k.J.transpose() * k.J).norm() < 1e-14);

  double yi = 1.5;
  auto ki = kkt_certificate(interval_system(), std::span<const double>(&yi, 1));
  CHECK(ki.gamma(0) == doctest::Approx(-0.5));
  CHECK(ki.distance() == doctest::Approx(ki.gamma_minus.norm() / ki.sigma_min));

  double inside = 0.0;
  CHECK_THROWS_AS(kkt_certificate(interval_system(), std::span<const double>(&inside, 1)), InputError);
}

TEST_CASE("KKT inequalities on random exterior points") {
  Rng rng(17);
  std::uniform_real_distribution<double> radius(1.0 + 1e-3, 2.0);
  const auto disk = disk_raw();
  const auto iv = interval_system();
  for (int i = 0; i < 100; ++i) {
    const auto dir = random_direction(rng, 2);
    const double rad = radius(rng);
    std::vector<double> y{rad * dir[0], rad * dir[1]};
    auto k = kkt_certificate(disk, y);
    CHECK(k.basic_inequality(1e-8));
    CHECK(k.small_diff(1e-8));
    CHECK(k.gamma_signs(1e-8));
    double x = (i % 2 ? 1.0 : -1.0) * radius(rng);
    auto ki = kkt_certificate(iv, std::span<const double>(&x, 1));
    CHECK(ki.basic_inequality(1e-8));
    CHECK(ki.small_diff(1e-8));
  }
}

TEST_CASE("empirical fits") {
  std::vector<DistanceSample> few(10);
  for (auto& s : few) s.G = 1.0;
  CHECK_THROWS_AS(empirical_loja_fit(few, LojaPair::EG), InputError);
  std::vector<DistanceSample> zero(100);
  CHECK_THROWS_AS(empirical_loja_fit(zero, LojaPair::EG), InputError);

  // G = E^2 forces the exponent up to 2
  std::vector<DistanceSample> sq;
  for (int i = 1; i <= 200; ++i) {
    DistanceSample s;
    s.E = i / 200.0;
    s.G = s.E * s.E;
    sq.push_back(s);
  }
  auto fit = empirical_loja_fit(sq, LojaPair::EG);
  CHECK(fit.L_hat == 2.0);
  CHECK(fit.c_hat == doctest::Approx(1.0));
}

TEST_CASE("certificate-derived constant") {
  auto sys = interval_system();
  const Rational fstar(1);
  auto f = MonomialPoly::constant(1, fstar) + sys.g[0];
  const Rational nf = bernstein_norm(f, sys.dom);
  auto res = cert_loja_constant(sys, {MonomialPoly::constant(1, 1)}, f, nf);
  CHECK(res.c == doctest::Approx(1.0 / nf.get_d()));
  for (const auto& x : lattice_points_double(sys.dom, 999)) {
    CHECK(eval_F(f, fstar, nf, x) <= res.c * eval_G(sys, x) + 1e-15);
  }
  auto flat = cert_loja_constant(sys, {MonomialPoly(1)}, MonomialPoly::constant(1, fstar), Rational(1));
  CHECK(flat.c == 0.0);
}

TEST_CASE("distance ratios satisfy F <= 2 d^2 E") {
  auto sys = normalize_system(golden());
  auto f = mono(1, {{{0}, 2}, {{1}, 1}});
  Objective obj{f, Rational(3, 2), bernstein_norm(f, sys.dom)};
  Projector proj(sys, quick());
  auto sg = sigma_J(sys, quick());
  for (const auto& s : distance_samples(proj, sg, quick(), &obj)) {
    CHECK(s.F <= 2.0 * s.E + 1e-12);
    if (s.G == 0.0) CHECK(s.E == 0.0);
  }
}

TEST_CASE("exponent formula") {
  CHECK(exponent_formula_bounds(1, 1, 1).value == 9.0);
  CHECK(exponent_formula_bounds(2, 1, 1).value == 27.0);
  CHECK(exponent_formula_bounds(1, 1, 2).value == 2.0 * 81.0);
  CHECK(exponent_formula_bounds(2, 2, 2).value > exponent_formula_bounds(2, 1, 2).value);
  CHECK_THROWS_AS(exponent_formula_bounds(0, 1, 1), InputError);
}
