#include "certiposi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "certiposi/approx.hpp"
#include "certiposi/certify.hpp"
#include "certiposi/errors.hpp"
#include "certiposi/io.hpp"
#include "certiposi/loja.hpp"

namespace certiposi::cli {

namespace {

using io::json;

struct Inputs {
  std::string system;
  std::string objective;
  std::string fstar;
  std::uint64_t seed = 1;
  std::string output;
};

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << j.dump(2) << '\n';
  else
    io::write_file(path, j);
}

SemialgSystem load_system(const std::string& path) { return io::system_from_json(io::read_file(path)); }

MonomialPoly load_objective(const std::string& path, int n) { return io::objective_from_json(io::read_file(path), n); }

BudgetMode parse_mode(const std::string& s) {
  if (s == "fg") return BudgetMode::FG;
  if (s == "eg") return BudgetMode::EG;
  if (s == "cqc") return BudgetMode::CQC;
  throw InputError("unknown mode \"" + s + "\" (expected fg, eg or cqc)");
}

std::string asymptotic_formula(BudgetMode mode) {
  if (mode == BudgetMode::CQC) return "n^2 r d^6 c^7 eps^-10";
  return "n^2 r d^6 c^7 eps^-(7L+3)";
}

int cmd_bounds(const Inputs& in, const std::string& loja_c, double loja_L, const std::string& mode_name,
               std::ostream& out) {
  const auto raw = load_system(in.system);
  const auto sys = normalize_system(raw);
  const BudgetMode mode = parse_mode(mode_name);
  const int n = sys.dim();
  const int d = std::max(1, sys.max_degree());

  json rep;
  rep["seed"] = in.seed;
  rep["n"] = n;
  rep["r"] = sys.count();
  rep["s_hat"] = to_string(sys.dom.s_hat());
  rep["scale_factors"] = json::array();
  for (const auto& s : sys.scale_factors) rep["scale_factors"].push_back(to_string(s));
  json markov = json::array();
  for (const auto& g : sys.g) markov.push_back(markov_bound(g.degree(), n));
  rep["markov_bounds"] = markov;
  rep["markov_formula"] = "2 d (2d - 1) / (sqrt(n) + 1)";
  if (sys.count() > 0) {
    const auto eb = exponent_formula_bounds(n, sys.count(), d);
    rep["exponent_bound"] = {{"value", eb.value}, {"note", eb.note}};
  }
  if (!in.objective.empty()) {
    if (in.fstar.empty()) throw InputError("--objective needs --fstar");
    const auto f = load_objective(in.objective, n);
    const Rational fstar = parse_rational(in.fstar);
    const Rational c = parse_rational(loja_c);
    auto budget = theoretical_degree(f, sys, fstar, c.get_d(), loja_L, mode);
    rep["budget"] = io::to_json(budget);
    rep["budget"]["asymptotic_formula"] = asymptotic_formula(mode);
    rep["budget"]["m_theory_formula"] = "eta^2 ||p||_B / (f*/4), eta = 2 m' + deg g";
    const Rational nf = bernstein_norm(f, sys.dom);
    rep["polya_degree_objective"] = polya_degree(f.degree(), nf, fstar).get_str();
    rep["polya_formula"] = "ceil(d^2 ||f||_B / f*)";
  }
  emit(rep, in.output, out);
  return kOk;
}

int cmd_certify(const Inputs& in, const std::string& loja_c, double loja_L, bool estimate, bool worst_case,
                int max_degree, std::ostream& out) {
  const auto raw = load_system(in.system);
  const auto sys = normalize_system(raw);
  const auto f = load_objective(in.objective, sys.dim());
  const Rational nf = bernstein_norm(f, sys.dom);
  Rational fstar;
  std::string source = "user";
  if (!in.fstar.empty()) {
    fstar = parse_rational(in.fstar);
  } else if (estimate) {
    const auto est = estimate_fstar(f, sys, 4000, in.seed);
    if (!est) throw InputError("no feasible point found while estimating f*");
    // shade the estimate down; it comes from sampling, not a proof
    fstar = floor_dyadic(*est - 1e-6 * std::max(1.0, std::fabs(*est)), 40);
    source = "estimated";
  } else {
    throw InputError("certify needs --fstar or --estimate-fstar");
  }
  if (fstar <= 0) throw NotPositive("f* = " + to_string(fstar) + " is not positive");
  const auto params = putinar_params(fstar / nf, loja_L, parse_rational(loja_c), sys.count(), nf, fstar);
  CertifyOptions opts;
  opts.plateau.worst_case = worst_case;
  opts.max_degree = max_degree;
  auto cert = build_certificate(f, sys, params, opts);
  cert.provenance["seed"] = in.seed;
  cert.provenance["fstar_source"] = source;
  cert.provenance["scale_factors"] = json::array();
  for (const auto& s : sys.scale_factors) cert.provenance["scale_factors"].push_back(to_string(s));
  io::write_file(in.output, io::to_json(cert));
  out << "certificate written to " << in.output << ": m = " << cert.m << ", lambda = " << to_string(cert.lambda)
      << '\n';
  return kOk;
}

int cmd_verify(const Inputs& in, const std::string& cert_path, std::ostream& out) {
  const auto sys = load_system(in.system);
  const auto f = load_objective(in.objective, sys.dim());
  const auto cj = io::read_file(cert_path);
  const auto rep = io::verify_json(f, cj, sys);
  json j = io::to_json(rep);
  j["seed"] = nullptr;
  if (!in.output.empty()) io::write_file(in.output, j);
  for (const auto& c : rep.checks) {
    out << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  out << (rep.passed() ? "certificate verified" : "certificate rejected") << '\n';
  return rep.passed() ? kOk : kVerifyFailed;
}

int cmd_loja(const Inputs& in, std::size_t samples, std::size_t grid, std::ostream& out) {
  const auto raw = load_system(in.system);
  const auto sys = normalize_system(raw);
  LojaOptions opts;
  opts.seed = in.seed;
  opts.samples = samples;
  opts.grid_points = grid;
  std::optional<Objective> obj;
  if (!in.objective.empty()) {
    if (in.fstar.empty()) throw InputError("--objective needs --fstar");
    const auto f = load_objective(in.objective, sys.dim());
    obj = Objective{f, parse_rational(in.fstar), bernstein_norm(f, sys.dom)};
  }
  const auto rep = loja_EG_constant(sys, opts, obj ? &*obj : nullptr);
  json j = io::to_json(rep);
  j["scale_factors"] = json::array();
  for (const auto& s : sys.scale_factors) j["scale_factors"].push_back(to_string(s));
  emit(j, in.output, out);
  return kOk;
}

int cmd_polya(const std::string& poly, const std::string& s_hat, const std::string& pstar_text, int max_degree,
              const std::string& output, std::ostream& out) {
  const auto pj = io::read_file(poly);
  const int n = pj.is_object() && pj.contains("n") ? pj["n"].get<int>() : -1;
  const auto f = pj.is_array() ? io::monomial_from_json(pj, n) : io::monomial_from_json(pj.at("terms"), n);
  const SimplexDomain dom = s_hat.empty() ? SimplexDomain::standard(f.dim()) : SimplexDomain(f.dim(), parse_rational(s_hat));
  const int d = std::max(1, f.degree());
  auto b = mono_to_bernstein(f, d, dom);
  const Rational pstar = parse_rational(pstar_text);
  const Integer cap = std::max(Integer(d), polya_degree(d, bnorm(b), pstar));

  json rep;
  rep["seed"] = nullptr;
  rep["degree"] = d;
  rep["s_hat"] = to_string(dom.s_hat());
  rep["norm_b"] = to_string(bnorm(b));
  rep["pstar"] = to_string(pstar);
  rep["polya_cap"] = cap.get_str();
  json tried = json::array();
  HomogeneousForm h = to_homogeneous(b);
  int code = kOk;
  while (true) {
    tried.push_back(h.m);
    if (h.all_nonnegative()) {
      rep["m_nonnegative"] = h.m;
      break;
    }
    if (h.m >= cap) {
      rep["m_nonnegative"] = nullptr;
      code = kBudgetExceeded;
      break;
    }
    const Integer next = std::min(cap, Integer(2 * h.m));
    if (next > max_degree) {
      rep["m_nonnegative"] = nullptr;
      rep["stopped_at_max_degree"] = max_degree;
      code = kBudgetExceeded;
      break;
    }
    elevate_in_place(h, static_cast<int>(next.get_si()));
  }
  rep["degrees_tried"] = tried;
  emit(rep, output, out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity certificates on the Bernstein simplex and Lojasiewicz constants", "certiposi"};
  app.require_subcommand(1);

  Inputs in;
  std::string loja_c = "1";
  double loja_L = 1.0;
  std::string mode = "fg";
  std::string cert_path;
  bool estimate = false, worst_case = false;
  int max_degree = 2048;
  std::size_t samples = 2000, grid = 100000;
  std::string poly, s_hat, pstar;
  std::function<int()> action;

  auto* bounds = app.add_subcommand("bounds", "Theoretical degree budgets and closed-form bounds");
  bounds->add_option("--system", in.system, "System file")->required()->check(CLI::ExistingFile);
  bounds->add_option("--objective", in.objective, "Objective file")->check(CLI::ExistingFile);
  bounds->add_option("--fstar", in.fstar, "Lower bound f* > 0 as p/q");
  bounds->add_option("--loja-c", loja_c, "Lojasiewicz constant");
  bounds->add_option("--loja-L", loja_L, "Lojasiewicz exponent");
  bounds->add_option("--mode", mode, "fg, eg or cqc");
  bounds->add_option("--seed", in.seed, "Recorded seed");
  bounds->add_option("-o,--output", in.output, "Report file (stdout if omitted)");
  bounds->callback([&] { action = [&] { return cmd_bounds(in, loja_c, loja_L, mode, out); }; });

  auto* certify = app.add_subcommand("certify", "Build a positivity certificate");
  certify->add_option("--system", in.system, "System file")->required()->check(CLI::ExistingFile);
  certify->add_option("--objective", in.objective, "Objective file")->required()->check(CLI::ExistingFile);
  certify->add_option("--fstar", in.fstar, "Lower bound f* > 0 as p/q");
  certify->add_flag("--estimate-fstar", estimate, "Estimate f* by sampling when --fstar is absent");
  certify->add_option("--loja-c", loja_c, "Lojasiewicz constant")->required();
  certify->add_option("--loja-L", loja_L, "Lojasiewicz exponent")->required();
  certify->add_flag("--worst-case", worst_case, "Use the worst-case plateau degree");
  certify->add_option("--max-degree", max_degree, "Largest Polya degree tried");
  certify->add_option("--seed", in.seed, "Seed for f* estimation");
  certify->add_option("-o,--output", in.output, "Certificate file")->required();
  certify->callback(
      [&] { action = [&] { return cmd_certify(in, loja_c, loja_L, estimate, worst_case, max_degree, out); }; });

  auto* verify = app.add_subcommand("verify", "Check a certificate exactly");
  verify->add_option("--system", in.system, "System file")->required()->check(CLI::ExistingFile);
  verify->add_option("--objective", in.objective, "Objective file")->required()->check(CLI::ExistingFile);
  verify->add_option("--cert", cert_path, "Certificate file")->required()->check(CLI::ExistingFile);
  verify->add_option("-o,--output", in.output, "Verification report file");
  verify->callback([&] { action = [&] { return cmd_verify(in, cert_path, out); }; });

  auto* loja = app.add_subcommand("loja", "Lojasiewicz constants of a system");
  loja->add_option("--system", in.system, "System file")->required()->check(CLI::ExistingFile);
  loja->add_option("--objective", in.objective, "Objective file")->check(CLI::ExistingFile);
  loja->add_option("--fstar", in.fstar, "f* as p/q");
  loja->add_option("--seed", in.seed, "Sampling seed");
  loja->add_option("--samples", samples, "Uniform samples for the empirical ratios");
  loja->add_option("--grid", grid, "Grid size for G*");
  loja->add_option("-o,--output", in.output, "Report file (stdout if omitted)");
  loja->callback([&] { action = [&] { return cmd_loja(in, samples, grid, out); }; });

  auto* polya = app.add_subcommand("polya", "Elevate one polynomial until its Bernstein coefficients are nonnegative");
  polya->add_option("--poly", poly, "Polynomial file")->required()->check(CLI::ExistingFile);
  polya->add_option("--pstar", pstar, "Lower bound p* > 0 on the simplex")->required();
  polya->add_option("--s-hat", s_hat, "Simplex parameter (default sqrt(n) rounded up)");
  polya->add_option("--max-degree", max_degree, "Largest degree tried");
  polya->add_option("-o,--output", in.output, "Report file (stdout if omitted)");
  polya->callback([&] { action = [&] { return cmd_polya(poly, s_hat, pstar, max_degree, in.output, out); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const NotPositive& e) {
    err << "not positive: " << e.what() << '\n';
    return kNotPositive;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed JSON: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace certiposi::cli
