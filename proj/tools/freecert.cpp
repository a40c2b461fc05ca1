// freecert: JSON-driven front end for the free-analysis toolkit.
//
// Exit codes: 0 pass/feasible/member, 1 fail/infeasible (witness emitted),
// 2 inconclusive or marginal, 3 input error.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "freecert/certs.hpp"
#include "freecert/config.hpp"
#include "freecert/domain.hpp"
#include "freecert/fock.hpp"
#include "freecert/freemap.hpp"
#include "freecert/json_io.hpp"
#include "freecert/pencil.hpp"
#include "freecert/poly.hpp"
#include "freecert/poly_text.hpp"
#include "freecert/sdp.hpp"
#include "freecert/series.hpp"

namespace fc = freecert;
using fc::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;

struct Cli {
  fc::RunConfig cfg;
  std::string output = "json";
  std::string out_path;
  int exit_code = kExitPass;
  Json report;

  void emit(const std::string& human_line) {
    report["verdict_line"] = human_line;
    if (output == "human")
      std::cout << human_line << "\n";
    else
      std::cout << report.dump(2) << "\n";
    if (!out_path.empty()) fc::save_json_file(report, out_path);
  }
};

// --p / --l / --x arguments accept a file path or (for polynomials) an inline
// expression; files win when they exist.
bool looks_like_file(const std::string& s) {
  std::ifstream f(s);
  return f.good();
}

fc::FreePoly load_poly_arg(const std::string& arg, int num_vars = 0) {
  if (looks_like_file(arg)) {
    Json j = fc::load_json_file(arg);
    return fc::poly_from_json(j);
  }
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '['))
    return fc::poly_from_json(Json::parse(arg));
  return fc::parse_poly(arg, num_vars);
}

fc::LinearPencil load_pencil_arg(const std::string& arg) {
  if (looks_like_file(arg)) return fc::pencil_from_json(fc::load_json_file(arg));
  return fc::pencil_from_json(Json::parse(arg));
}

fc::MatrixTuple load_tuple_arg(const std::string& arg, const fc::RunConfig& cfg) {
  Json j = looks_like_file(arg) ? fc::load_json_file(arg) : Json::parse(arg);
  return fc::tuple_from_json(j, cfg.caps.max_matrix_size);
}

fc::Domain load_domain_arg(const std::string& arg) {
  Json j = looks_like_file(arg) ? fc::load_json_file(arg) : Json::parse(arg);
  return fc::domain_from_json(j);
}

// Named maps: "identity", "ftheta:<theta>", "poly:<json or @file>".
fc::FreeMapHandle load_map_spec(const std::string& spec, int g_hint) {
  if (spec == "identity") return fc::identity_map(g_hint > 0 ? g_hint : 1);
  if (spec.rfind("ftheta:", 0) == 0)
    return fc::ftheta(std::stod(spec.substr(7)));
  if (spec.rfind("poly:", 0) == 0) {
    std::string rest = spec.substr(5);
    Json j = (!rest.empty() && rest[0] == '@')
                 ? fc::load_json_file(rest.substr(1))
                 : (looks_like_file(rest) ? fc::load_json_file(rest)
                                          : Json::parse(rest));
    std::vector<fc::FreePoly> comps;
    if (j.is_array())
      for (const Json& c : j) comps.push_back(fc::poly_from_json(c));
    else
      comps.push_back(fc::poly_from_json(j));
    return fc::poly_map(std::move(comps));
  }
  throw std::runtime_error("unknown map spec: " + spec +
                           " (expected identity, ftheta:<theta>, poly:<json>)");
}

Json check_report_to_json(const fc::CheckReport& r) {
  return Json{{"check", r.check},         {"samples", r.samples},
              {"rejected", r.rejected},   {"max_residual", r.max_residual},
              {"tolerance", r.tolerance}, {"pass", r.pass},
              {"note", r.note}};
}

Json containment_to_json(const fc::Containment& c) {
  return Json{{"verdict", fc::verdict_name(c.verdict)},
              {"margin", c.margin},
              {"segment_min", c.segment_min},
              {"tol", c.tol}};
}

Json sdp_status_json(fc::SdpStatus s) { return fc::sdp_status_name(s); }

// ---- subcommand bodies ------------------------------------------------------

void run_eval_poly(Cli& cli, const std::string& p_arg,
                   const std::string& x_arg) {
  fc::FreePoly p = load_poly_arg(p_arg);
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::Mat v = fc::eval_poly(p, x);
  cli.report["value"] = fc::mat_to_json(v);
  cli.report["shape"] = {v.rows(), v.cols()};
  cli.emit("eval poly: " + std::to_string(v.rows()) + "x" +
           std::to_string(v.cols()) + " value emitted");
}

void run_eval_pencil(Cli& cli, const std::string& l_arg,
                     const std::string& x_arg) {
  fc::LinearPencil l = load_pencil_arg(l_arg);
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::PencilValue v = fc::eval_pencil(l, x);
  cli.report["value"] = fc::mat_to_json(v.value);
  cli.report["asymmetry"] = v.asymmetry;
  cli.report["lambda_min"] = fc::lambda_min(v.value);
  cli.emit("eval pencil: lambda_min = " +
           std::to_string(fc::lambda_min(v.value)));
}

void run_domain_check(Cli& cli, const std::string& d_arg,
                      const std::string& x_arg) {
  fc::Domain d = load_domain_arg(d_arg);
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::Containment c = fc::contains(d, x, cli.cfg.tol.domain_boundary);
  cli.report["containment"] = containment_to_json(c);
  if (c.verdict == fc::Containment::Verdict::non_member) {
    cli.report["witness"] = {{"x", fc::tuple_to_json(x)},
                             {"margin", c.margin}};
    cli.exit_code = kExitFail;
  } else if (c.verdict == fc::Containment::Verdict::boundary) {
    cli.exit_code = kExitInconclusive;
  }
  cli.emit(std::string("domain check: ") + fc::verdict_name(c.verdict) +
           " (margin " + std::to_string(c.margin) + ")");
}

void run_domain_probe(Cli& cli, const std::string& d_arg, double bound,
                      int trials, int max_dim) {
  fc::Domain d = load_domain_arg(d_arg);
  fc::Rng rng(cli.cfg.effective_seed());
  fc::BoundednessReport r = fc::boundedness_probe(d, bound, trials, rng, max_dim);
  cli.report["probe"] = {{"violated", r.violated},
                         {"samples", r.samples},
                         {"worst_row_norm_sq", r.worst_row_norm_sq},
                         {"bound", bound}};
  if (r.violated && r.witness) {
    cli.report["witness"] = {{"x", fc::tuple_to_json(*r.witness)},
                             {"margin", r.witness_margin}};
    cli.exit_code = kExitFail;
  }
  cli.emit(r.violated ? "domain probe: bound violated (witness emitted)"
                      : "domain probe: no violation found (evidence only)");
}

void run_domain_closure(Cli& cli, const std::string& d_arg, int trials) {
  fc::Domain d = load_domain_arg(d_arg);
  fc::Rng rng(cli.cfg.effective_seed());
  fc::ClosureReport r = fc::closure_properties_test(d, trials, rng);
  cli.report["closure"] = {{"trials", r.trials},
                           {"failures", r.failures},
                           {"max_margin_drift", r.max_margin_drift},
                           {"min_sum_margin", r.min_sum_margin},
                           {"note", r.note}};
  if (r.failures > 0) cli.exit_code = kExitFail;
  cli.emit("domain closure: " + std::to_string(r.failures) + " failures in " +
           std::to_string(r.trials) + " trials");
}

void run_fock_dim(Cli& cli, int g, int ell) {
  long dim = fc::TruncatedFock::dimension(g, ell);
  cli.report["g"] = g;
  cli.report["ell"] = ell;
  cli.report["dim"] = dim;
  cli.emit("fock dim: sigma(" + std::to_string(ell) + ") = " +
           std::to_string(dim));
}

void run_fock_dilate(Cli& cli, const std::string& x_arg, double r, int ell) {
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::DilationResult d = fc::dilate(x, r, ell, cli.cfg.caps.max_fock_dim);
  cli.report["dilation"] = {
      {"scale", d.scale},
      {"isometry_residual", d.isometry_residual},
      {"intertwine_residual", d.intertwine_residual},
      {"completeness_residual", d.completeness_residual},
      {"isometry", fc::mat_to_json(d.isometry)},
      {"defect", fc::mat_to_json(d.defect)}};
  double worst = std::max({d.isometry_residual, d.intertwine_residual,
                           d.completeness_residual});
  if (worst > cli.cfg.tol.dilation) cli.exit_code = kExitFail;
  cli.emit("fock dilate: worst residual " + std::to_string(worst));
}

void run_series_extract(Cli& cli, const std::string& map_spec, int g_hint,
                        int ell, double delta) {
  fc::FreeMapHandle f = load_map_spec(map_spec, g_hint);
  std::vector<std::string> warnings;
  fc::PowerSeries s =
      fc::extract_coeffs(f, ell, delta, &warnings, cli.cfg.caps.max_fock_dim);
  cli.report["series"] = fc::series_to_json(s);
  cli.report["warnings"] = warnings;
  cli.emit("series extract: " + std::to_string(s.coeffs.size()) +
           " nonzero coefficients up to length " + std::to_string(ell));
}

void run_series_eval(Cli& cli, const std::string& s_arg,
                     const std::string& x_arg, int order) {
  fc::PowerSeries s = fc::series_from_json(
      looks_like_file(s_arg) ? fc::load_json_file(s_arg) : Json::parse(s_arg));
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  if (order < 0) order = s.max_len;
  fc::SeriesValue v = fc::eval_series(s, x, order);
  cli.report["value"] = fc::tuple_to_json(v.value);
  if (v.tail_bound) cli.report["tail_bound"] = *v.tail_bound;
  cli.emit("series eval: partial sum of order " + std::to_string(order));
}

void run_series_homog(Cli& cli, const std::string& map_spec, int g_hint, int m,
                      const std::string& x_arg) {
  fc::FreeMapHandle f = load_map_spec(map_spec, g_hint);
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::MatrixTuple hm = fc::homogeneous_part(f, m, x);
  cli.report["degree"] = m;
  cli.report["value"] = fc::tuple_to_json(hm);
  cli.emit("series homog: degree-" + std::to_string(m) + " part emitted");
}

void run_map_check(Cli& cli, const std::string& map_spec, int g_hint,
                   int trials) {
  fc::FreeMapHandle f = load_map_spec(map_spec, g_hint);
  fc::Rng rng(cli.cfg.effective_seed());
  std::vector<int> sizes{1, 2, 3, 4};
  std::vector<fc::CheckReport> reports;
  reports.push_back(fc::check_direct_sums(f, trials, sizes, rng,
                                          cli.cfg.tol.checker_pass));
  reports.push_back(fc::check_intertwining(f, trials, sizes, rng,
                                           cli.cfg.tol.checker_pass));
  Json arr = Json::array();
  bool all_pass = true;
  bool starved = false;
  for (const auto& r : reports) {
    arr.push_back(check_report_to_json(r));
    all_pass = all_pass && r.pass;
    starved = starved || r.samples == 0;
  }
  cli.report["checks"] = std::move(arr);
  if (starved)
    cli.exit_code = kExitInconclusive;
  else if (!all_pass)
    cli.exit_code = kExitFail;
  cli.emit(std::string("map check: ") +
           (starved ? "inconclusive (no samples)"
                    : (all_pass ? "all axioms pass" : "axiom violation")));
}

void run_map_derive(Cli& cli, const std::string& map_spec, int g_hint,
                    const std::string& x_arg, const std::string& h_arg) {
  fc::FreeMapHandle f = load_map_spec(map_spec, g_hint);
  fc::MatrixTuple x = load_tuple_arg(x_arg, cli.cfg);
  fc::MatrixTuple h = load_tuple_arg(h_arg, cli.cfg);
  fc::MatrixTuple d = fc::block_derivative(f, x, h);
  cli.report["derivative"] = fc::tuple_to_json(d);
  cli.emit("map derive: directional derivative emitted");
}

void run_map_ftheta(Cli& cli, double theta, const std::string& check_against,
                    int trials) {
  fc::FreeMapHandle f = fc::ftheta(theta);
  fc::Rng rng(cli.cfg.effective_seed());
  Json checks = Json::array();
  bool ok = true;

  {  // fixed point at the origin
    fc::MatrixTuple zero = fc::MatrixTuple::zero(1, 3);
    double r = f(zero).norm();
    checks.push_back({{"check", "fixes_origin"}, {"residual", r},
                      {"pass", r == 0.0}});
    ok = ok && r == 0.0;
  }
  {  // derivative at 0 along H = I
    fc::MatrixTuple x = fc::MatrixTuple::zero(1, 2);
    fc::MatrixTuple h(std::vector<fc::Mat>{fc::Mat::Identity(2, 2)});
    fc::MatrixTuple d = fc::block_derivative(f, x, h);
    double r = (d[0] - std::exp(std::complex<double>(0, theta)) *
                           fc::Mat::Identity(2, 2))
                   .norm();
    checks.push_back({{"check", "derivative_at_origin"}, {"residual", r},
                      {"pass", r <= 1e-10}});
    ok = ok && r <= 1e-10;
  }
  {  // self-map sampling
    const fc::Domain& dom = *f.domain;
    int kept = 0;
    double worst = 1e300;
    for (int t = 0; t < trials; ++t) {
      auto x = fc::sample_member(dom, 1 + t % 4, rng);
      if (!x) continue;
      ++kept;
      auto c = fc::contains(dom, f(*x), cli.cfg.tol.domain_boundary);
      worst = std::min(worst, c.margin);
    }
    bool pass = kept > 0 && worst > -1e-9;
    checks.push_back({{"check", "self_map"}, {"samples", kept},
                      {"worst_margin", kept ? worst : 0.0}, {"pass", pass}});
    ok = ok && pass;
  }
  if (!check_against.empty()) {  // compare with a named map on samples
    fc::FreeMapHandle other = load_map_spec(check_against, 1);
    const fc::Domain& dom = *f.domain;
    double worst = 0.0;
    int kept = 0;
    for (int t = 0; t < trials; ++t) {
      auto x = fc::sample_member(dom, 1 + t % 3, rng);
      if (!x) continue;
      ++kept;
      fc::MatrixTuple a = f(*x), b = other(*x);
      for (int j = 0; j < a.arity(); ++j)
        worst = std::max(worst, fc::operator_norm(a[j] - b[j]));
    }
    bool pass = kept > 0 && worst <= 1e-8 * (1.0 + 1.0);
    checks.push_back({{"check", "agrees_with_" + check_against},
                      {"samples", kept}, {"max_residual", worst},
                      {"pass", pass}});
    ok = ok && pass;
  }
  cli.report["theta"] = theta;
  cli.report["checks"] = std::move(checks);
  if (!ok) cli.exit_code = kExitFail;
  cli.emit(std::string("map ftheta: ") + (ok ? "all checks pass" : "failure"));
}

void run_cert_dominate(Cli& cli, const std::string& l1_arg,
                       const std::string& l2_arg) {
  fc::LinearPencil l1 = load_pencil_arg(l1_arg);
  fc::LinearPencil l2 = load_pencil_arg(l2_arg);
  fc::DominationReport rep = fc::lmi_dominate(l1, l2, cli.cfg);
  cli.report["status"] = sdp_status_json(rep.status);
  cli.report["lambda_star"] = rep.lambda_star;
  cli.report["note"] = rep.note;
  if (rep.cert) {
    cli.report["certificate"] = fc::kraus_cert_to_json(*rep.cert);
    cli.report["kraus_terms"] = rep.cert->v.size();
  }
  if (rep.farkas) cli.report["farkas"] = fc::farkas_to_json(*rep.farkas);
  if (rep.witness) {
    cli.report["witness"] = {{"x", fc::tuple_to_json(rep.witness->x)},
                             {"margin_in", rep.witness->margin_in},
                             {"margin_out", rep.witness->margin_out}};
  }
  if (rep.status == fc::SdpStatus::infeasible) {
    cli.report["refutation_conclusive"] = rep.refutation_conclusive;
    cli.exit_code = kExitFail;
  } else if (rep.status != fc::SdpStatus::feasible) {
    cli.exit_code = kExitInconclusive;
  }
  cli.emit(std::string("cert dominate: ") + fc::sdp_status_name(rep.status));
}

void run_cert_psatz(Cli& cli, const std::string& p_arg,
                    const std::string& l_arg, int cap) {
  fc::LinearPencil l = load_pencil_arg(l_arg);
  fc::FreePoly p = load_poly_arg(p_arg, l.num_vars());
  std::optional<int> cap_opt;
  if (cap >= 0) cap_opt = cap;
  fc::PsatzReport rep = fc::psatz(p, l, cli.cfg, cap_opt);
  cli.report["status"] = sdp_status_json(rep.status);
  cli.report["degree_cap"] = rep.degree_cap;
  cli.report["lambda_star"] = rep.lambda_star;
  cli.report["note"] = rep.note;
  if (rep.cert) {
    fc::PsatzCheck chk = fc::verify_psatz(p, l, *rep.cert,
                                          cli.cfg.tol.cert_residual);
    cli.report["certificate"] = fc::psatz_cert_to_json(*rep.cert, chk.residual);
  }
  if (rep.farkas) cli.report["farkas"] = fc::farkas_to_json(*rep.farkas);
  if (rep.witness) {
    cli.report["witness"] = {{"x", fc::tuple_to_json(rep.witness->x)},
                             {"domain_margin", rep.witness->domain_margin},
                             {"value_margin", rep.witness->value_margin}};
  }
  if (rep.status == fc::SdpStatus::infeasible)
    cli.exit_code = kExitFail;
  else if (rep.status != fc::SdpStatus::feasible)
    cli.exit_code = kExitInconclusive;
  cli.emit(std::string("cert psatz: ") + fc::sdp_status_name(rep.status));
}

void run_cert_verify(Cli& cli, const std::string& cert_arg,
                     const std::string& l1_arg, const std::string& l2_arg,
                     const std::string& p_arg, const std::string& l_arg) {
  Json cj = looks_like_file(cert_arg) ? fc::load_json_file(cert_arg)
                                      : Json::parse(cert_arg);
  const std::string kind = cj.value("kind", "");
  if (kind == "domination" || (kind.empty() && cj.contains("V"))) {
    if (l1_arg.empty() || l2_arg.empty())
      throw std::runtime_error("cert verify (domination) needs --l1 and --l2");
    fc::LinearPencil l1 = load_pencil_arg(l1_arg);
    fc::LinearPencil l2 = load_pencil_arg(l2_arg);
    std::vector<fc::Mat> v = fc::kraus_from_json(cj);
    fc::DominationCheck chk =
        fc::verify_domination(l1, l2, v, cli.cfg.tol.cert_residual);
    cli.report["valid"] = chk.valid;
    cli.report["unital_residual"] = chk.unital_residual;
    cli.report["coeff_residual"] = chk.coeff_residual;
    if (!chk.valid) cli.exit_code = kExitFail;
    cli.emit(std::string("cert verify: ") +
             (chk.valid ? "valid" : "invalid") + " domination certificate");
    return;
  }
  if (kind == "psatz" || (kind.empty() && cj.contains("f"))) {
    if (p_arg.empty() || l_arg.empty())
      throw std::runtime_error("cert verify (psatz) needs --p and --l");
    fc::LinearPencil l = load_pencil_arg(l_arg);
    fc::FreePoly p = load_poly_arg(p_arg, l.num_vars());
    fc::PsatzCertificate cert = fc::psatz_cert_from_json(cj);
    fc::PsatzCheck chk = fc::verify_psatz(p, l, cert,
                                          cli.cfg.tol.cert_residual);
    cli.report["valid"] = chk.valid;
    cli.report["residual"] = chk.residual;
    cli.report["defect"] = fc::poly_to_json(chk.defect);
    if (!chk.valid) cli.exit_code = kExitFail;
    cli.emit(std::string("cert verify: ") +
             (chk.valid ? "valid" : "invalid") + " psatz certificate");
    return;
  }
  throw std::runtime_error("certificate kind not recognized");
}

void run_cert_equiv(Cli& cli, const std::string& l1_arg,
                    const std::string& l2_arg) {
  fc::LinearPencil l1 = load_pencil_arg(l1_arg);
  fc::LinearPencil l2 = load_pencil_arg(l2_arg);
  fc::EquivReport rep = fc::unitary_equiv_check(l1, l2, cli.cfg);
  cli.report["verdict"] = fc::equiv_verdict_name(rep.verdict);
  cli.report["residual"] = rep.residual;
  cli.report["trace_gap"] = rep.trace_gap;
  cli.report["intertwiner_dim"] = rep.intertwiner_dim;
  cli.report["note"] = rep.note;
  if (rep.u) cli.report["U"] = fc::mat_to_json(*rep.u);
  if (rep.verdict == fc::EquivVerdict::not_equivalent)
    cli.exit_code = kExitFail;
  else if (rep.verdict == fc::EquivVerdict::inconclusive)
    cli.exit_code = kExitInconclusive;
  cli.emit(std::string("cert equiv: ") + fc::equiv_verdict_name(rep.verdict));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"freecert: noncommutative polynomial/pencil evaluation, LMI "
               "domains, Fock dilations, free-map checks, and SDP "
               "certificates"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--seed", cli.cfg.seed, "RNG seed (FREECERT_SEED overrides)");
  app.add_option("--output", cli.output, "Report style: json or human")
      ->check(CLI::IsMember({"json", "human"}));
  app.add_option("--out", cli.out_path, "Also write the JSON report here");
  app.add_option("--max-sdp-dim", cli.cfg.caps.max_sdp_dim, "SDP size cap");
  app.add_option("--max-fock-dim", cli.cfg.caps.max_fock_dim,
                 "Fock dimension cap");
  app.add_option("--max-matrix-size", cli.cfg.caps.max_matrix_size,
                 "Input tuple size cap");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate polynomials and pencils");
  eval->require_subcommand(1);
  std::string a_p, a_l, a_x, a_h, a_l1, a_l2, a_domain, a_series, a_map, a_cert,
      a_check;
  auto* eval_poly = eval->add_subcommand("poly", "sum_w C_w (x) X^w");
  eval_poly->add_option("--p", a_p, "Polynomial (file or expression)")
      ->required();
  eval_poly->add_option("--x", a_x, "Matrix tuple (file or inline)")->required();
  auto* eval_pencil = eval->add_subcommand("pencil", "Pencil value at a tuple");
  eval_pencil->add_option("--l", a_l, "Pencil (file or inline)")->required();
  eval_pencil->add_option("--x", a_x, "Matrix tuple")->required();

  // domain
  auto* domain = app.add_subcommand("domain", "Membership and probes");
  domain->require_subcommand(1);
  double bound = 10.0;
  int trials = 200, max_dim = 3;
  auto* dom_check = domain->add_subcommand("check", "Membership with margin");
  dom_check->add_option("--domain", a_domain, "Domain (file or inline)")
      ->required();
  dom_check->add_option("--x", a_x, "Matrix tuple")->required();
  auto* dom_probe = domain->add_subcommand("probe", "Boundedness probe");
  dom_probe->add_option("--domain", a_domain)->required();
  dom_probe->add_option("--bound", bound, "Row-norm bound C");
  dom_probe->add_option("--trials", trials);
  dom_probe->add_option("--max-dim", max_dim);
  auto* dom_closure =
      domain->add_subcommand("closure", "Unitary/direct-sum closure test");
  dom_closure->add_option("--domain", a_domain)->required();
  dom_closure->add_option("--trials", trials);

  // fock
  auto* fock = app.add_subcommand("fock", "Truncated word model");
  fock->require_subcommand(1);
  int g = 1, ell = 4, order = -1, m_deg = 1, cap = -1;
  double r_scale = 1.0, delta = 0.5, theta = 0.0;
  auto* fock_dim = fock->add_subcommand("dim", "Basis dimension");
  fock_dim->add_option("--g", g, "Letters")->required();
  fock_dim->add_option("--ell", ell, "Truncation length")->required();
  auto* fock_dilate =
      fock->add_subcommand("dilate", "Dilation isometry of a nilpotent tuple");
  fock_dilate->add_option("--x", a_x, "Matrix tuple")->required();
  fock_dilate->add_option("--r", r_scale, "Radius r");
  fock_dilate->add_option("--ell", ell, "Truncation length");

  // series
  auto* series = app.add_subcommand("series", "Power-series operations");
  series->require_subcommand(1);
  auto* ser_extract =
      series->add_subcommand("extract", "Coefficients from a black-box map");
  ser_extract->add_option("--map", a_map, "identity | ftheta:<t> | poly:<json>")
      ->required();
  ser_extract->add_option("--g", g, "Arity hint for named maps");
  ser_extract->add_option("--ell", ell, "Max word length");
  ser_extract->add_option("--delta", delta, "Evaluation radius");
  auto* ser_eval = series->add_subcommand("eval", "Partial sum at a tuple");
  ser_eval->add_option("--series", a_series, "Series (file or inline)")
      ->required();
  ser_eval->add_option("--x", a_x, "Matrix tuple")->required();
  ser_eval->add_option("--order", order, "Truncation order (default: all)");
  auto* ser_homog =
      series->add_subcommand("homog", "Homogeneous part by phase averaging");
  ser_homog->add_option("--map", a_map)->required();
  ser_homog->add_option("--g", g, "Arity hint for named maps");
  ser_homog->add_option("--m", m_deg, "Degree")->required();
  ser_homog->add_option("--x", a_x, "Matrix tuple")->required();

  // map
  auto* map_cmd = app.add_subcommand("map", "Free-map property checks");
  map_cmd->require_subcommand(1);
  auto* map_check = map_cmd->add_subcommand("check", "Axiom residual suite");
  map_check->add_option("--map", a_map)->required();
  map_check->add_option("--g", g, "Arity hint for named maps");
  map_check->add_option("--trials", trials);
  auto* map_derive =
      map_cmd->add_subcommand("derive", "Directional derivative via 2x2 blocks");
  map_derive->add_option("--map", a_map)->required();
  map_derive->add_option("--g", g, "Arity hint for named maps");
  map_derive->add_option("--x", a_x, "Base point")->required();
  map_derive->add_option("--dir", a_h, "Direction")->required();
  auto* map_ftheta = map_cmd->add_subcommand("ftheta", "The one-variable family");
  map_ftheta->add_option("--theta", theta, "Angle")->required();
  map_ftheta->add_option("--check", a_check, "Compare against a named map");
  map_ftheta->add_option("--trials", trials);

  // cert
  auto* cert = app.add_subcommand("cert", "Certificates");
  cert->require_subcommand(1);
  auto* cert_dom = cert->add_subcommand("dominate", "LMI domination via the "
                                                    "Choi feasibility SDP");
  cert_dom->add_option("--l1", a_l1, "Dominating-side pencil")->required();
  cert_dom->add_option("--l2", a_l2, "Dominated-side pencil")->required();
  auto* cert_psatz = cert->add_subcommand("psatz", "Weighted sum-of-squares "
                                                   "certificate");
  cert_psatz->add_option("--p", a_p, "Polynomial (file or expression)")
      ->required();
  cert_psatz->add_option("--l", a_l, "Monic pencil")->required();
  cert_psatz->add_option("--cap", cap, "Degree-cap override");
  auto* cert_verify = cert->add_subcommand("verify", "Re-verify a certificate");
  cert_verify->add_option("--cert", a_cert, "Certificate (file or inline)")
      ->required();
  cert_verify->add_option("--l1", a_l1, "Domination: first pencil");
  cert_verify->add_option("--l2", a_l2, "Domination: second pencil");
  cert_verify->add_option("--p", a_p, "Psatz: polynomial");
  cert_verify->add_option("--l", a_l, "Psatz: pencil");
  auto* cert_equiv =
      cert->add_subcommand("equiv", "Heuristic unitary equivalence");
  cert_equiv->add_option("--l1", a_l1)->required();
  cert_equiv->add_option("--l2", a_l2)->required();

  // Let global options (--seed, --out, ...) appear after subcommand names.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands({})) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  cli.report = fc::report_header(cli.cfg);
  try {
    if (eval_poly->parsed()) run_eval_poly(cli, a_p, a_x);
    else if (eval_pencil->parsed()) run_eval_pencil(cli, a_l, a_x);
    else if (dom_check->parsed()) run_domain_check(cli, a_domain, a_x);
    else if (dom_probe->parsed())
      run_domain_probe(cli, a_domain, bound, trials, max_dim);
    else if (dom_closure->parsed()) run_domain_closure(cli, a_domain, trials);
    else if (fock_dim->parsed()) run_fock_dim(cli, g, ell);
    else if (fock_dilate->parsed()) run_fock_dilate(cli, a_x, r_scale, ell);
    else if (ser_extract->parsed())
      run_series_extract(cli, a_map, g, ell, delta);
    else if (ser_eval->parsed()) run_series_eval(cli, a_series, a_x, order);
    else if (ser_homog->parsed()) run_series_homog(cli, a_map, g, m_deg, a_x);
    else if (map_check->parsed()) run_map_check(cli, a_map, g, trials);
    else if (map_derive->parsed()) run_map_derive(cli, a_map, g, a_x, a_h);
    else if (map_ftheta->parsed()) run_map_ftheta(cli, theta, a_check, trials);
    else if (cert_dom->parsed()) run_cert_dominate(cli, a_l1, a_l2);
    else if (cert_psatz->parsed()) run_cert_psatz(cli, a_p, a_l, cap);
    else if (cert_verify->parsed())
      run_cert_verify(cli, a_cert, a_l1, a_l2, a_p, a_l);
    else if (cert_equiv->parsed()) run_cert_equiv(cli, a_l1, a_l2);
  } catch (const std::exception& e) {
    Json err = fc::report_header(cli.cfg);
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    return kExitInputError;
  }
  return cli.exit_code;
}
