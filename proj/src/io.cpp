#include "certiposi/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "certiposi/errors.hpp"

namespace certiposi::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

MultiIndex index_from_json(const json& j, int n) {
  if (!j.is_array()) throw InputError("exponent vector must be an array");
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long>() < 0) throw InputError("exponents must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  if (n >= 0 && static_cast<int>(e.size()) != n) {
    throw InputError("exponent vector of length " + std::to_string(e.size()) + ", expected " + std::to_string(n));
  }
  return MultiIndex(std::move(e));
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_number(const std::optional<T>& v) {
  return v ? number_or_null(static_cast<double>(*v)) : json(nullptr);
}

json vec(const std::vector<double>& v) { return json(v); }

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError("rational must be a string \"p/q\", got " + j.dump());
  return parse_rational(j.get<std::string>());
}

json to_json(const MonomialPoly& p) {
  json terms = json::array();
  for (const auto& [alpha, c] : p.terms()) {
    terms.push_back({{"exp", std::vector<int>(alpha.entries().begin(), alpha.entries().end())}, {"coef", to_string(c)}});
  }
  return terms;
}

MonomialPoly monomial_from_json(const json& j, int n) {
  if (!j.is_array()) throw InputError("polynomial must be a term list");
  if (n < 0) {
    if (j.empty()) throw InputError("cannot infer the dimension of an empty term list");
    n = static_cast<int>(field(j.front(), "exp").size());
  }
  MonomialPoly p(n);
  for (const auto& t : j) p.add_term(index_from_json(field(t, "exp"), n), rational_from_json(field(t, "coef")));
  return p;
}

json to_json(const BernsteinPoly& b) {
  json coeffs = json::array();
  const auto& idx = b.index_set();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& c = b.coeffs()[r];
    if (c == 0) continue;
    coeffs.push_back({{"alpha", std::vector<int>(idx[r].begin(), idx[r].end())}, {"c", to_string(c)}});
  }
  return {{"n", b.dim()}, {"m", b.degree()}, {"s_hat", to_string(b.domain().s_hat())}, {"coeffs", coeffs}};
}

BernsteinPoly bernstein_from_json(const json& j) {
  const int m = int_field(j, "m");
  if (m < 0) throw InputError("Bernstein degree must be nonnegative");
  const auto& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw InputError("\"coeffs\" must be an array");
  int n = -1;
  if (j.contains("n")) n = int_field(j, "n");
  else if (!coeffs.empty()) n = static_cast<int>(field(coeffs.front(), "alpha").size());
  if (n < 1) throw InputError("cannot determine the dimension of a Bernstein polynomial");
  BernsteinPoly b(SimplexDomain(n, rational_from_json(field(j, "s_hat"))), m);
  for (const auto& c : coeffs) {
    const auto alpha = index_from_json(field(c, "alpha"), n);
    if (alpha.order() > m) throw InputError("Bernstein index above the degree");
    b.set_coeff(alpha, rational_from_json(field(c, "c")));
  }
  return b;
}

json to_json(const SemialgSystem& sys) {
  json ineq = json::array();
  for (int i = 0; i < sys.count(); ++i) {
    ineq.push_back({{"name", sys.names.size() > static_cast<std::size_t>(i) ? sys.names[static_cast<std::size_t>(i)]
                                                                          : "g" + std::to_string(i + 1)},
                    {"terms", to_json(sys.g[static_cast<std::size_t>(i)])}});
  }
  json vars = json::array();
  for (int j = 0; j < sys.dim(); ++j) vars.push_back("x" + std::to_string(j + 1));
  return {{"n", sys.dim()}, {"variables", vars}, {"s_hat", to_string(sys.dom.s_hat())}, {"inequalities", ineq}};
}

SemialgSystem system_from_json(const json& j) {
  const int n = int_field(j, "n");
  if (n < 1) throw InputError("system dimension must be >= 1");
  if (j.contains("variables") && (!j["variables"].is_array() || j["variables"].size() != static_cast<std::size_t>(n))) {
    throw InputError("\"variables\" must list n names");
  }
  const Rational s_hat = j.contains("s_hat") && !j["s_hat"].is_null() ? rational_from_json(j["s_hat"])
                                                                       : SimplexDomain::default_s_hat(n);
  SemialgSystem sys{SimplexDomain(n, s_hat), {}, {}, false, false, {}};
  const auto& ineq = field(j, "inequalities");
  if (!ineq.is_array()) throw InputError("\"inequalities\" must be an array");
  for (const auto& g : ineq) {
    sys.names.push_back(g.contains("name") ? g["name"].get<std::string>() : "g" + std::to_string(sys.g.size() + 1));
    sys.g.push_back(monomial_from_json(field(g, "terms"), n));
  }
  return sys;
}

MonomialPoly objective_from_json(const json& j, int n) {
  if (j.is_array()) return monomial_from_json(j, n);
  if (j.contains("n") && int_field(j, "n") != n) throw InputError("objective and system dimensions differ");
  return monomial_from_json(field(j, "terms"), n);
}

json to_json(const Certificate& cert) {
  json s_list = json::array();
  for (const auto& s : cert.s_list) s_list.push_back(to_json(s));
  json g = json::array();
  for (const auto& gi : cert.g_scaled) g.push_back(to_json(gi));
  return {{"n", cert.dom.dim()},
          {"s_hat", to_string(cert.dom.s_hat())},
          {"m", cert.m},
          {"lambda", to_string(cert.lambda)},
          {"p_coeffs", to_json(cert.p)["coeffs"]},
          {"s_list", s_list},
          {"g_scaled", g},
          {"provenance", cert.provenance}};
}

Certificate certificate_from_json(const json& j) {
  const int n = int_field(j, "n");
  const int m = int_field(j, "m");
  if (n < 1 || m < 0) throw InputError("certificate needs n >= 1 and m >= 0");
  const Rational s_hat = rational_from_json(field(j, "s_hat"));
  SimplexDomain dom(n, s_hat);
  json p = {{"n", n}, {"m", m}, {"s_hat", field(j, "s_hat")}, {"coeffs", field(j, "p_coeffs")}};
  Certificate cert{dom, m, rational_from_json(field(j, "lambda")), bernstein_from_json(p), {}, {}, json::object()};
  for (const auto& s : field(j, "s_list")) cert.s_list.push_back(bernstein_from_json(s));
  for (const auto& g : field(j, "g_scaled")) cert.g_scaled.push_back(monomial_from_json(g, n));
  if (j.contains("provenance")) cert.provenance = j["provenance"];
  return cert;
}

VerifyReport verify_json(const MonomialPoly& f, const json& cert, const SemialgSystem& sys) {
  try {
    return verify_certificate(f, certificate_from_json(cert), &sys);
  } catch (const DomainError& e) {
    VerifyReport rep;
    rep.checks.push_back({"domain", false, e.what()});
    return rep;
  }
}

json to_json(const PlateauSpec& spec) {
  return {{"delta", to_string(spec.delta)},
          {"sqrt_nu", to_string(spec.sqrt_nu)},
          {"m_prime", spec.m_prime ? json(*spec.m_prime) : json(nullptr)}};
}

PlateauSpec plateau_from_json(const json& j) {
  PlateauSpec spec{rational_from_json(field(j, "delta")), rational_from_json(field(j, "sqrt_nu")), std::nullopt};
  if (j.contains("m_prime") && !j["m_prime"].is_null()) spec.m_prime = int_field(j, "m_prime");
  spec.validate();
  return spec;
}

json to_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"passed", rep.passed()}, {"checks", checks}, {"failures", rep.failures()}};
}

json to_json(const DegreeBudget& b) {
  return {{"mode", to_string(b.mode)},
          {"c_eff", number_or_null(b.c_eff)},
          {"L_eff", number_or_null(b.L_eff)},
          {"eps", number_or_null(b.eps)},
          {"delta", number_or_null(b.delta)},
          {"nu", number_or_null(b.nu)},
          {"lambda", number_or_null(b.lambda)},
          {"m_prime", number_or_null(b.m_prime)},
          {"m_prime_stated", number_or_null(b.m_prime_stated)},
          {"eta", number_or_null(b.eta)},
          {"norm_p_bound", number_or_null(b.norm_p_bound)},
          {"m_theory", number_or_null(b.m_theory)},
          {"log10_m_theory", number_or_null(b.log10_m_theory)},
          {"asymptotic", number_or_null(b.asymptotic)},
          {"eta_actual", optional_number(b.eta_actual)},
          {"m_final", optional_number(b.m_final)}};
}

namespace {

json fit_json(const std::optional<LojaFit>& f) {
  if (!f) return nullptr;
  return {{"L_hat", f->L_hat}, {"c_hat", number_or_null(f->c_hat)}, {"samples_used", f->samples_used},
          {"tail_slope", number_or_null(f->tail_slope)}};
}

}  // namespace

json to_json(const LojaReport& rep) {
  json cond = {{"c1", number_or_null(rep.cond.c1)},
               {"dist_proxy", number_or_null(rep.cond.dist_proxy)},
               {"first_term", number_or_null(rep.cond.first_term)},
               {"second_term", number_or_null(rep.cond.second_term)},
               {"value", number_or_null(rep.cond.value)},
               {"witness", nullptr}};
  if (rep.cond.witness) {
    const auto& w = *rep.cond.witness;
    cond["witness"] = {{"z", vec(w.z)}, {"active", w.active}, {"l0", vec(w.l0)}, {"l1", w.l1},
                       {"norm", w.norm}, {"sigma_after", w.sigma_after}};
  }
  return {{"n", rep.n},
          {"r", rep.r},
          {"degenerate", rep.degenerate},
          {"sigma_J", number_or_null(rep.sigma_J)},
          {"sigma_point", vec(rep.sigma_point)},
          {"c2", number_or_null(rep.c2)},
          {"U_radius", optional_number(rep.U_radius)},
          {"G_star", optional_number(rep.G_star)},
          {"G_star_point", vec(rep.G_star_point)},
          {"diam_D", rep.diam_D},
          {"diam_formula", rep.diam_formula},
          {"c_EG_bound", number_or_null(rep.c_EG_bound)},
          {"cond_bound", cond},
          {"sup_E_over_G", number_or_null(rep.sup_E_over_G)},
          {"near_boundary_violations", rep.near_boundary_violations},
          {"empirical", {{"EG", fit_json(rep.fit_EG)}, {"FG", fit_json(rep.fit_FG)}}},
          {"sampling",
           {{"seed", rep.seed},
            {"rays", rep.rays},
            {"rays_exiting", rep.rays_exiting},
            {"grid_points", rep.grid_points},
            {"projections", rep.projections},
            {"samples", rep.samples}}},
          {"tolerances", {{"tau_act", rep.tau_act}, {"feas_tol", rep.feas_tol}, {"kkt_tol", rep.kkt_tol}}},
          {"assumptions", json::array({"CQC"})},
          {"notes", rep.notes}};
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw InputError("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace certiposi::io
