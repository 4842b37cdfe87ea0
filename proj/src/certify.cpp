#include "certiposi/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "certiposi/errors.hpp"
#include "certiposi/parallel.hpp"
#include "certiposi/sampling.hpp"

namespace certiposi {

int SemialgSystem::max_degree() const {
  int d = 0;
  for (const auto& gi : g) d = std::max(d, gi.degree());
  return d;
}

Rational bernstein_norm(const MonomialPoly& p, const SimplexDomain& dom) {
  return bnorm(mono_to_bernstein(p, p.degree(), dom));
}

SemialgSystem normalize_system(const SemialgSystem& raw) {
  SemialgSystem out = raw;
  out.scale_factors.assign(raw.g.size(), Rational(1));
  for (std::size_t i = 0; i < raw.g.size(); ++i) {
    if (raw.g[i].dim() != raw.dim()) throw DimensionError("constraint dimension differs from the system");
    if (raw.g[i].is_zero()) {
      const std::string name = i < raw.names.size() ? raw.names[i] : "g" + std::to_string(i + 1);
      throw InputError("constraint " + name + " is the zero polynomial");
    }
    const Rational nb = bernstein_norm(raw.g[i], raw.dom);
    out.g[i] = raw.g[i] * (1 / nb);
    const Rational prior = i < raw.scale_factors.size() ? raw.scale_factors[i] : Rational(1);
    out.scale_factors[i] = prior * nb;
  }
  out.scaled = true;
  return out;
}

namespace {

bool feasible(const SemialgSystem& sys, std::span<const double> x, double tol = 0.0) {
  for (const auto& gi : sys.g) {
    if (mono_eval(gi, x) < -tol) return false;
  }
  return true;
}

}  // namespace

BallCheck check_ball_containment(const SemialgSystem& sys, std::size_t samples, std::uint64_t seed,
                                 double tol) {
  Rng rng(seed);
  BallCheck out;
  out.samples = samples;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto x = uniform_point(rng, sys.dom);
    if (!feasible(sys, x)) continue;
    ++out.feasible;
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    out.max_norm = std::max(out.max_norm, std::sqrt(norm2));
  }
  if (out.feasible == 0) {
    out.status = BallCheck::Status::unknown;
  } else {
    out.status = out.max_norm <= 1.0 + tol ? BallCheck::Status::contained : BallCheck::Status::not_contained;
  }
  return out;
}

CertParams putinar_params(const Rational& eps, double L, const Rational& c, int r, const Rational& norm_f,
                          const Rational& fstar) {
  if (eps <= 0 || eps > 1) throw InputError("eps must lie in (0, 1], got " + to_string(eps));
  if (!(L >= 1.0) || !std::isfinite(L)) throw InputError("Lojasiewicz exponent must be >= 1");
  if (c <= 0) throw InputError("Lojasiewicz constant must be positive");
  if (r < 0) throw InputError("negative constraint count");
  if (norm_f <= 0) throw InputError("||f||_B must be positive");
  if (fstar <= 0) throw InputError("f* must be positive");

  CertParams p;
  p.eps = eps;
  p.loja_L = L;
  p.loja_c = c;
  p.r = r;
  p.norm_f = norm_f;
  p.fstar = fstar;
  if (L == std::floor(L) && L <= 64) {
    p.delta = pow(eps, static_cast<unsigned>(L)) / c;
  } else {
    const double v = std::exp(L * std::log(eps.get_d())) / c.get_d() * (1.0 - 1e-12);
    const int bits = 48 - static_cast<int>(std::floor(std::log2(v)));
    p.delta = floor_dyadic(v, bits);
    p.delta_exact = false;
    if (p.delta <= 0) throw NumericError("delta underflows double precision");
  }
  p.lambda = r == 0 ? Rational(0) : Rational(5 * norm_f / p.delta);
  if (r == 0) {
    p.sqrt_nu = 1;
    p.nu = 1;
    return p;
  }
  Rational bound = p.delta / (8 * r);
  bound = std::min(bound, Rational(fstar / (4 * r * p.lambda)));
  bound = std::min(bound, Rational(p.delta * eps / (20 * r)));
  // smallest k with k^2 * bound >= 1
  Integer k = ceil_div(1 / bound);
  mpz_sqrt(k.get_mpz_t(), k.get_mpz_t());
  while (Rational(k * k) * bound < 1) ++k;
  p.sqrt_nu = Rational(1, k);
  p.nu = p.sqrt_nu * p.sqrt_nu;
  return p;
}

Certificate build_certificate(const MonomialPoly& f, const SemialgSystem& sys, const CertParams& params,
                              const CertifyOptions& opts) {
  if (!sys.scaled) throw InputError("certificates need a normalized system");
  if (f.dim() != sys.dim()) throw DimensionError("objective and system dimensions differ");
  if (params.r != sys.count()) throw InputError("parameters were computed for a different constraint count");
  const auto& dom = sys.dom;
  const int n = dom.dim();

  // an exact feasible point with f <= 0 rules out any certificate
  {
    const auto pts = lattice_points(dom, lattice_resolution(n, opts.positivity_samples));
    for (const auto& x : pts) {
      bool in_s = true;
      for (const auto& gi : sys.g) {
        if (mono_eval(gi, x) < 0) {
          in_s = false;
          break;
        }
      }
      if (!in_s) continue;
      const Rational v = mono_eval(f, x);
      if (v <= 0) {
        std::string where;
        for (const auto& xi : x) where += (where.empty() ? "" : ", ") + to_string(xi);
        throw NotPositive("f = " + to_string(v) + " <= 0 at the feasible point (" + where + ")");
      }
    }
  }

  nlohmann::json prov;
  prov["eps"] = to_string(params.eps);
  prov["loja_L"] = params.loja_L;
  prov["loja_c"] = to_string(params.loja_c);
  prov["delta"] = to_string(params.delta);
  prov["delta_exact"] = params.delta_exact;
  prov["lambda"] = to_string(params.lambda);
  prov["sqrt_nu"] = to_string(params.sqrt_nu);
  prov["nu"] = to_string(params.nu);
  prov["fstar"] = to_string(params.fstar);
  prov["norm_f"] = to_string(params.norm_f);
  prov["r"] = params.r;

  Certificate cert{dom, 0, params.lambda, BernsteinPoly(dom, 0), {}, sys.g, {}};
  const BernsteinPoly fb = mono_to_bernstein(f, f.degree(), dom);
  std::vector<BernsteinPoly> hg;
  nlohmann::json plateaus = nlohmann::json::array();
  for (const auto& gi : sys.g) {
    PlateauSpec spec{params.delta, params.sqrt_nu, std::nullopt};
    auto res = build_plateau(gi, spec, dom, opts.plateau);
    plateaus.push_back({{"m_prime", res.m_prime},
                        {"grid_error", res.grid_error},
                        {"target", res.target},
                        {"grid_points", res.grid_size},
                        {"error_bound", res.error_bound},
                        {"m_prime_worst_case",
                         plateau_worst_case_degree(n, std::max(1, gi.degree()), params.delta, params.nu).get_str()},
                        {"m_prime_stated",
                         plateau_stated_degree(n, std::max(1, gi.degree()), params.delta, params.nu).get_str()}});
    const auto h = multiply(res.s, res.s);
    hg.push_back(multiply(h, mono_to_bernstein(gi, gi.degree(), dom)));
    cert.s_list.push_back(std::move(res.s));
  }
  prov["plateaus"] = plateaus;

  int eta = f.degree();
  for (const auto& t : hg) eta = std::max(eta, t.degree());
  std::vector<std::pair<Rational, const BernsteinPoly*>> terms{{Rational(1), &fb}};
  const Rational neg_lambda = -params.lambda;
  for (const auto& t : hg) terms.emplace_back(neg_lambda, &t);
  const BernsteinPoly p = linear_combine(terms, eta, dom);
  const Rational norm_p = bnorm(p);
  const Integer cap = std::max(Integer(eta), polya_degree(eta, norm_p, params.fstar / 4));
  prov["eta"] = eta;
  prov["norm_p"] = to_string(norm_p);
  prov["polya_cap"] = cap.get_str();

  auto too_big = [&](int m) {
    double size = 1.0;
    for (int i = 1; i <= n; ++i) size = size * (m + i) / i;
    return m > opts.max_degree || size > static_cast<double>(opts.max_coefficients);
  };

  HomogeneousForm h = to_homogeneous(p);
  nlohmann::json tried = nlohmann::json::array();
  while (true) {
    tried.push_back(h.m);
    if (h.all_nonnegative()) break;
    if (h.m >= cap) {
      throw BudgetExceeded("Bernstein coefficients still negative at the Polya degree " + cap.get_str() +
                           "; the eps / L / c inputs are too optimistic");
    }
    Integer next = std::min(cap, Integer(std::max(1, 2 * h.m)));
    if (too_big(static_cast<int>(std::min<Integer>(next, Integer(std::numeric_limits<int>::max())).get_si()))) {
      throw BudgetExceeded("Bernstein coefficients still negative at degree " + std::to_string(h.m) +
                           "; the next degree exceeds the practical limit (max degree " +
                           std::to_string(opts.max_degree) + ", Polya cap " + cap.get_str() + ")");
    }
    elevate_in_place(h, static_cast<int>(next.get_si()));
  }
  prov["degrees_tried"] = tried;
  cert.m = h.m;
  cert.p = from_homogeneous(dom, h);
  cert.provenance = std::move(prov);
  return cert;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

VerifyReport verify_certificate(const MonomialPoly& f, const Certificate& cert, const SemialgSystem* sys) {
  VerifyReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const int n = cert.dom.dim();

  bool shape_ok = f.dim() == n && cert.p.domain() == cert.dom && cert.p.degree() == cert.m &&
                  cert.s_list.size() == cert.g_scaled.size();
  for (const auto& s : cert.s_list) shape_ok = shape_ok && s.domain() == cert.dom;
  for (const auto& g : cert.g_scaled) shape_ok = shape_ok && g.dim() == n;
  add("structure", shape_ok, shape_ok ? "" : "dimensions, degrees or list lengths are inconsistent");

  {
    const auto& idx = cert.p.index_set();
    std::string detail;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (cert.p.coeffs()[r] < 0) {
        detail = "p coefficient at alpha = [";
        for (int a : idx[r]) detail += std::to_string(a) + ",";
        detail.back() = ']';
        detail += " is " + to_string(cert.p.coeffs()[r]);
        break;
      }
    }
    add("p_nonnegative", detail.empty(), detail);
  }

  add("lambda_nonnegative", cert.lambda >= 0, cert.lambda >= 0 ? "" : "lambda = " + to_string(cert.lambda));

  {
    std::string detail;
    for (std::size_t i = 0; i < cert.g_scaled.size() && detail.empty(); ++i) {
      if (cert.g_scaled[i].dim() != n || cert.g_scaled[i].is_zero()) {
        detail = "g" + std::to_string(i + 1) + " is malformed";
        continue;
      }
      const Rational nb = bernstein_norm(cert.g_scaled[i], cert.dom);
      if (nb != 1) detail = "||g" + std::to_string(i + 1) + "||_B = " + to_string(nb);
    }
    add("g_normalized", detail.empty(), detail);
  }

  if (shape_ok) {
    MonomialPoly rhs = bernstein_to_mono(cert.p);
    for (std::size_t i = 0; i < cert.s_list.size(); ++i) {
      const MonomialPoly s = bernstein_to_mono(cert.s_list[i]);
      rhs += cert.lambda * (s * s * cert.g_scaled[i]);
    }
    const bool ok = rhs == f;
    add("identity", ok, ok ? "" : "f - (p + lambda sum s_i^2 g_i) is nonzero");
  } else {
    add("identity", false, "skipped: malformed certificate");
  }

  if (sys) {
    const bool same = sys->dom == cert.dom;
    add("domain", same,
        same ? "" : "certificate s_hat = " + to_string(cert.dom.s_hat()) + ", system s_hat = " +
                        to_string(sys->dom.s_hat()));
    bool match = false;
    std::string detail;
    try {
      const auto norm = sys->scaled ? *sys : normalize_system(*sys);
      match = norm.g == cert.g_scaled;
      if (!match) detail = "certificate constraints differ from the normalized system";
    } catch (const Error& e) {
      detail = e.what();
    }
    add("g_matches_system", match, detail);
  }
  return rep;
}

std::optional<double> estimate_fstar(const MonomialPoly& f, const SemialgSystem& sys, std::size_t samples,
                                     std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, std::vector<double>>> pool;
  for (std::size_t k = 0; k < samples; ++k) {
    auto x = uniform_point(rng, sys.dom);
    if (!feasible(sys, x)) continue;
    pool.emplace_back(mono_eval(f, std::span<const double>(x)), std::move(x));
  }
  if (pool.empty()) return std::nullopt;
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  pool.resize(std::min<std::size_t>(pool.size(), 10));
  double best = pool.front().first;
  const int n = sys.dim();
  for (auto& [val, x] : pool) {
    // compass search restricted to S and D^
    double step = 0.25;
    while (step > 1e-10) {
      bool moved = false;
      for (int j = 0; j < n && !moved; ++j) {
        for (double sgn : {1.0, -1.0}) {
          auto y = x;
          y[static_cast<std::size_t>(j)] += sgn * step;
          if (!sys.dom.contains(std::span<const double>(y)) || !feasible(sys, y)) continue;
          const double v = mono_eval(f, std::span<const double>(y));
          if (v < val) {
            val = v;
            x = std::move(y);
            moved = true;
            break;
          }
        }
      }
      if (!moved) step /= 2;
    }
    best = std::min(best, val);
  }
  return best;
}

std::string to_string(BudgetMode mode) {
  switch (mode) {
    case BudgetMode::FG:
      return "FG";
    case BudgetMode::EG:
      return "EG";
    case BudgetMode::CQC:
      return "CQC";
  }
  return "?";
}

DegreeBudget theoretical_degree(const BudgetInputs& in, double c, double L, BudgetMode mode) {
  if (!(in.eps > 0.0) || in.eps > 1.0) throw InputError("eps must lie in (0, 1]");
  if (!(c > 0.0)) throw InputError("Lojasiewicz constant must be positive");
  if (!(L >= 1.0)) throw InputError("Lojasiewicz exponent must be >= 1");
  if (!(in.fstar > 0.0)) throw InputError("f* must be positive");
  DegreeBudget b;
  b.mode = mode;
  b.eps = in.eps;
  const double df = std::max(1, in.deg_f);
  switch (mode) {
    case BudgetMode::FG:
      b.c_eff = c;
      b.L_eff = L;
      break;
    case BudgetMode::EG:
      b.c_eff = std::pow(2.0, L) * std::pow(df, 2.0 * L) * c;
      b.L_eff = L;
      break;
    case BudgetMode::CQC:
      b.c_eff = 2.0 * df * df * c;
      b.L_eff = 1.0;
      break;
  }
  const double le = std::log(in.eps);
  const double lc = std::log(b.c_eff);
  const double ldelta = b.L_eff * le - lc;
  b.delta = std::exp(ldelta);
  const double loja_ratio = std::exp(lc - b.L_eff * le);  // c eps^-L
  double leta = std::log(std::max(1, in.deg_f));
  if (in.r > 0) {
    const double lnu = ldelta + le - std::log(20.0 * in.r);
    b.nu = std::exp(lnu);
    b.lambda = 5.0 * in.norm_f / b.delta;
    const double dg = std::max(1, in.deg_g);
    const double lmp = std::log(16384.0 * in.n) + 4.0 * std::log(dg) - 2.0 * ldelta - lnu;
    b.m_prime = std::ceil(std::exp(lmp));
    b.m_prime_stated = std::ceil(std::exp(lmp - 2.0 * std::log(dg)));
    b.eta = std::max<double>(in.deg_f, 2.0 * b.m_prime + in.deg_g);
    leta = std::max(leta, std::log(2.0) + lmp + std::log1p(in.deg_g / (2.0 * std::exp(lmp))));
    b.norm_p_bound = 6.0 * in.r * std::max(1.0, loja_ratio) * in.norm_f;
  } else {
    b.eta = in.deg_f;
    b.norm_p_bound = in.norm_f;
  }
  const double lm = 2.0 * leta + std::log(b.norm_p_bound) - std::log(in.fstar / 4.0);
  b.m_theory = std::ceil(std::exp(lm));
  b.log10_m_theory = lm / std::log(10.0);
  const double dg = std::max(1, in.deg_g);
  b.asymptotic = static_cast<double>(in.n) * in.n * in.r * std::pow(dg, 6.0) * std::pow(b.c_eff, 7.0) *
                 std::exp(-(7.0 * b.L_eff + 3.0) * le);
  return b;
}

DegreeBudget theoretical_degree(const MonomialPoly& f, const SemialgSystem& sys, const Rational& fstar, double c,
                                double L, BudgetMode mode) {
  const SemialgSystem norm = sys.scaled ? sys : normalize_system(sys);
  const Rational nf = bernstein_norm(f, sys.dom);
  if (nf <= 0) throw InputError("objective is the zero polynomial");
  if (fstar <= 0) throw InputError("f* must be positive");
  BudgetInputs in;
  in.n = sys.dim();
  in.r = sys.count();
  in.deg_g = norm.max_degree();
  in.deg_f = f.degree();
  in.eps = std::min(1.0, Rational(fstar / nf).get_d());
  in.norm_f = nf.get_d();
  in.fstar = fstar.get_d();
  return theoretical_degree(in, c, L, mode);
}

}  // namespace certiposi
