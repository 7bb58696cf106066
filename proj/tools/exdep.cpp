// exdep: extremal-dependence measures for max-stable models.
//
// Subcommands: measure {mu|lambda|theta|tail-coef|xi}, dominate,
// converge {mu|lambda}, check {bounds|bivariate|subsets|kleje|indep|all},
// oracle {quadrature|xi|exact-domination}.
// Exit codes: 0 success, 1 numeric failure, 2 config error, 3 capability
// error. Output files depend only on the resolved config and seed;
// --threads and --simd are execution hints and are never embedded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exdep/accumulate.hpp"
#include "exdep/checks.hpp"
#include "exdep/domination.hpp"
#include "exdep/errors.hpp"
#include "exdep/grammar.hpp"
#include "exdep/kernels.hpp"
#include "exdep/oracles.hpp"
#include "exdep/thresholds.hpp"
#include "exdep/version.hpp"

namespace {

using nlohmann::json;
using namespace exdep;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int threads = 1;
  std::string out;
  std::string format = "json";
  std::string simd = "auto";

  StreamKey key() const { return StreamKey{seed, stream, 0}; }
  void apply_hints() const {
    set_threads(threads);
    if (simd == "scalar") kernels::set_backend(kernels::Backend::scalar);
    if (simd == "avx2") kernels::set_backend(kernels::Backend::avx2);
    if (simd == "auto") kernels::set_backend(kernels::detect_backend());
  }
};

void add_common(CLI::App* cmd, Common& c, bool need_seed = true) {
  auto* seed = cmd->add_option("--seed", c.seed, "random seed (no wall-clock default)");
  if (need_seed) seed->required();
  cmd->add_option("--stream", c.stream, "experiment-level stream id");
  cmd->add_option("--threads", c.threads, "worker count hint; never changes results");
  cmd->add_option("--out", c.out, "write the report to this file");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--simd", c.simd, "kernel backend override")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

void emit(const Common& c, const std::string& text) {
  std::cout << text;
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + c.out + "'");
    f << text;
  }
}

json config_base(const std::string& command, const Common& c) {
  json cfg;
  cfg["seed"] = c.seed;
  cfg["stream"] = c.stream;
  cfg["format"] = c.format;
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config"] = cfg;
  return doc;
}

std::string csv_header(const std::string& command, const json& cfg) {
  std::string s = "# tool=" + std::string(kToolName) + " version=" + kVersion + "\n";
  s += "# command=" + command + "\n";
  std::string line = "#";
  for (const auto& [k, v] : cfg.items()) {
    line += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return s + line + "\n";
}

std::string render(const Common& c, const json& doc,
                   const std::function<std::string()>& csv_body) {
  if (c.format == "json") return doc.dump(2) + "\n";
  return csv_header(doc["command"].get<std::string>(), doc["config"]) + csv_body();
}

json result_object(const std::string& measure, const EstimatorResult& r, std::uint64_t seed,
                   const std::string& model_h, const std::string& model_q) {
  json o;
  o["measure"] = measure;
  o["estimate"] = r.estimate;
  o["std_error"] = r.std_error;
  o["n_samples"] = r.n_samples;
  o["method"] = method_name(r.method);
  o["seed"] = seed;
  o["model_H"] = model_h;
  o["model_Q"] = model_q;
  return o;
}

std::vector<std::uint64_t> parse_n_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s.substr(i), &used);
    out.push_back(v);
    i += used;
    if (i < s.size()) {
      if (s[i] != ',') throw ConfigError("bad --n-list: expected comma-separated integers");
      ++i;
    }
  }
  if (out.empty()) throw ConfigError("--n-list must not be empty");
  return out;
}

// ---------------------------------------------------------------------------
// measure

int run_measure(const std::string& kind, const Common& c, const std::string& h_expr,
                const std::string& q_expr, std::uint64_t n, const std::string& method,
                double x1, double x2, const std::vector<double>& h_steps) {
  json doc = config_base("measure " + kind, c);
  doc["config"]["H"] = h_expr;
  const ModelExpr he = parse_model(h_expr);
  const SpectralModel h = to_spectral(he);

  if (kind == "xi") {
    doc["config"]["x1"] = x1;
    doc["config"]["x2"] = x2;
    doc["config"]["h_list"] = h_steps;
    json rows = json::array();
    for (const double step : h_steps) {
      const XiEstimate e = xi_finite_difference(h, x1, x2, step);
      json row;
      row["h"] = e.step;
      row["xi"] = e.value;
      row["singular"] = e.singular;
      rows.push_back(row);
    }
    doc["rows"] = rows;
    if (h.has_partials()) {
      const XiValue cf = xi_closed_form(h, x1, x2);
      doc["closed_form"] = json{{"xi", cf.value}, {"singular", cf.singular}};
    }
    emit(c, render(c, doc, [&] {
           std::string b = "h,xi,singular\n";
           for (const auto& row : doc["rows"])
             b += fmt17(row["h"].get<double>()) + "," + fmt17(row["xi"].get<double>()) + "," +
                  (row["singular"].get<bool>() ? "1" : "0") + "\n";
           return b;
         }));
    return 0;
  }

  if (kind == "theta") {
    doc["config"]["method"] = method;
    doc["config"]["n"] = n;
    EstimatorResult r;
    if (method == "mc" || (method == "auto" && !h.has_neg_log_h())) {
      SpectralModel mc = h;
      mc.neg_log_h = nullptr;  // force the spectral Monte Carlo path
      r = theta(mc, n, c.key());
    } else {
      r = theta(h, n, c.key());
    }
    doc["result"] = result_object("theta", r, c.seed, he.text, "");
    emit(c, render(c, doc, [&] {
           std::string b = "measure,estimate,std_error,n_samples,method,seed,model_H,model_Q\n";
           b += "theta," + fmt17(r.estimate) + "," + fmt17(r.std_error) + "," +
                std::to_string(r.n_samples) + "," + method_name(r.method) + "," +
                std::to_string(c.seed) + "," + he.text + ",\n";
           return b;
         }));
    return 0;
  }

  if (kind == "tail-coef") {
    const double v = upper_tail_coefficient(h);
    EstimatorResult r;
    r.estimate = v;
    r.method = Method::closed_form;
    doc["result"] = result_object("tail_coef", r, c.seed, he.text, "");
    emit(c, render(c, doc, [&] {
           std::string b = "measure,estimate,std_error,n_samples,method,seed,model_H,model_Q\n";
           b += "tail_coef," + fmt17(v) + ",0,0,closed_form," + std::to_string(c.seed) + "," +
                he.text + ",\n";
           return b;
         }));
    return 0;
  }

  // mu / lambda
  const bool self_form = kind == "lambda" && method == "self";
  if (q_expr.empty() && !self_form) throw ConfigError("measure " + kind + " needs --Q");
  doc["config"]["Q"] = q_expr;
  doc["config"]["n"] = n;
  doc["config"]["method"] = method;
  const ModelExpr qe = self_form && q_expr.empty() ? he : parse_model(q_expr);
  const DistributionSpec q = to_distribution(qe);

  EstimatorResult r;
  if (kind == "mu") {
    if (method == "spectral" || method == "auto") {
      r = estimate_mu_spectral(h, q, n, c.key());
    } else if (method == "direct") {
      r = estimate_mu_direct(h, q, n, c.key());
    } else if (method == "psi") {
      r = estimate_mu_psi(h, q, n, c.key());
    } else {
      throw ConfigError("mu methods: auto|spectral|direct|psi");
    }
  } else {
    if (method == "spectral" || method == "auto") {
      r = estimate_lambda_spectral(h, q, n, c.key());
    } else if (method == "self") {
      r = estimate_lambda_self(h, n, c.key());
    } else if (method == "subset") {
      double se = 0.0;
      const SubsetTable mt = mu_subset_table(h, q, n, c.key(), &se);
      r.estimate = lambda_from_mu_table(mt);
      r.std_error = se;
      r.n_samples = n;
      r.method = Method::exponent;
      r.key = c.key();
    } else {
      throw ConfigError("lambda methods: auto|spectral|self|subset");
    }
  }
  doc["result"] = result_object(kind, r, c.seed, he.text, qe.text);
  emit(c, render(c, doc, [&] {
         std::string b = "measure,estimate,std_error,n_samples,method,seed,model_H,model_Q\n";
         b += kind + "," + fmt17(r.estimate) + "," + fmt17(r.std_error) + "," +
              std::to_string(r.n_samples) + "," + method_name(r.method) + "," +
              std::to_string(c.seed) + "," + he.text + "," + qe.text + "\n";
         return b;
       }));
  return 0;
}

// ---------------------------------------------------------------------------
// dominate

int run_dominate(const Common& c, const std::string& f_expr, const std::string& g_expr,
                 const std::string& n_list_s, std::uint64_t reps, bool brute_force) {
  const std::vector<std::uint64_t> n_list = parse_n_list(n_list_s);
  json doc = config_base("dominate", c);
  doc["config"]["F"] = f_expr;
  doc["config"]["G"] = g_expr;
  doc["config"]["n_list"] = n_list;
  doc["config"]["reps"] = reps;
  doc["config"]["brute_force"] = brute_force;
  const DistributionSpec f = to_distribution(parse_model(f_expr));
  const DistributionSpec g = to_distribution(parse_model(g_expr));
  const DominationReport rep = simulate_domination(f, g, n_list, reps, c.key(), brute_force);

  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["n"] = r.n;
    row["reps"] = r.reps;
    row["n_pi_marginal"] = r.n_pi_marginal();
    row["se_marginal"] = r.se_n_marginal();
    row["n_pi_complete"] = r.n_pi_complete();
    row["se_complete"] = r.se_n_complete();
    row["pi_marginal"] = r.pi_marginal;
    row["pi_complete"] = r.pi_complete;
    row["ties"] = r.ties;
    rows.push_back(row);
  }
  doc["rows"] = rows;
  if (rep.target_mu) doc["target_mu"] = *rep.target_mu;
  if (rep.target_lambda) doc["target_lambda"] = *rep.target_lambda;

  emit(c, render(c, doc, [&] {
         std::string b =
             "n,reps,n_pi_marginal,se_marginal,n_pi_complete,se_complete,target_mu,target_lambda\n";
         const std::string tm = rep.target_mu ? fmt17(*rep.target_mu) : "";
         const std::string tl = rep.target_lambda ? fmt17(*rep.target_lambda) : "";
         for (const auto& r : rep.rows) {
           b += std::to_string(r.n) + "," + std::to_string(r.reps) + "," +
                fmt17(r.n_pi_marginal()) + "," + fmt17(r.se_n_marginal()) + "," +
                fmt17(r.n_pi_complete()) + "," + fmt17(r.se_n_complete()) + "," + tm + "," + tl +
                "\n";
         }
         return b;
       }));
  return 0;
}

// ---------------------------------------------------------------------------
// converge

int run_converge(const std::string& kind, const Common& c, const std::string& h_expr,
                 const std::string& q_expr, const std::string& n_list_s, std::uint64_t n_mc) {
  const std::vector<std::uint64_t> n_list = parse_n_list(n_list_s);
  json doc = config_base("converge " + kind, c);
  doc["config"]["H"] = h_expr;
  doc["config"]["Q"] = q_expr;
  doc["config"]["n_list"] = n_list;
  doc["config"]["n_mc"] = n_mc;
  SweepReport rep;
  if (kind == "mu") {
    rep = convergence_sweep_mu(to_spectral(parse_model(h_expr)),
                               to_distribution(parse_model(q_expr)), n_list, n_mc, c.key());
  } else {
    rep = convergence_sweep_lambda(to_distribution(parse_model(q_expr)),
                                   to_distribution(parse_model(h_expr)), n_list, n_mc, c.key());
  }
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back(json{{"n", r.n}, {"estimate", r.estimate}, {"std_error", r.std_error}});
  doc["rows"] = rows;
  if (rep.limit_estimate) {
    doc["limit_estimate"] = *rep.limit_estimate;
    doc["limit_std_error"] = *rep.limit_std_error;
  }
  emit(c, render(c, doc, [&] {
         std::string b = "n,estimate,std_error,limit_estimate,limit_std_error\n";
         const std::string le = rep.limit_estimate ? fmt17(*rep.limit_estimate) : "";
         const std::string ls = rep.limit_std_error ? fmt17(*rep.limit_std_error) : "";
         for (const auto& r : rep.rows)
           b += std::to_string(r.n) + "," + fmt17(r.estimate) + "," + fmt17(r.std_error) + "," +
                le + "," + ls + "\n";
         return b;
       }));
  return 0;
}

// ---------------------------------------------------------------------------
// check

int run_check(const std::string& suite, const Common& c, const std::string& h_expr,
              const std::string& q_expr, int expect_d, std::uint64_t n, std::uint64_t reps) {
  json doc = config_base("check " + suite, c);
  doc["config"]["n"] = n;
  doc["config"]["reps"] = reps;
  if (expect_d > 0 && !h_expr.empty() && parse_model(h_expr).d != expect_d) {
    throw ConfigError("--d does not match the dimension of --H");
  }
  std::vector<CheckLine> lines;
  const StreamKey key = c.key();
  const auto add = [&](std::vector<CheckLine> more) {
    for (auto& l : more) lines.push_back(std::move(l));
  };
  std::uint64_t stream = 0;
  const auto stream_key = [&] { return key.with_stream(key.stream + 10000 * (stream++)); };
  if (suite == "bounds" || suite == "all") add(check_bounds(n, stream_key()));
  if (suite == "bivariate" || suite == "all") {
    const SpectralModel h = to_spectral(parse_model(h_expr.empty() ? "logistic(2,2)" : h_expr));
    const DistributionSpec q = to_distribution(parse_model(q_expr.empty() ? "h0(2)" : q_expr));
    doc["config"]["H"] = h.name;
    doc["config"]["Q"] = q.name;
    add(check_bivariate(h, q, n, stream_key()));
  }
  if (suite == "subsets" || suite == "all") {
    const SpectralModel h = to_spectral(parse_model(h_expr.empty() ? "logistic(3,1.5)" : h_expr));
    const DistributionSpec q = to_distribution(parse_model(q_expr.empty() ? "h0(3)" : q_expr));
    add(check_subsets(h, q, n, stream_key()));
  }
  if (suite == "kleje" || suite == "all") add(check_exceedance(reps, stream_key()));
  if (suite == "indep" || suite == "all") add(check_independence(reps, stream_key()));
  if (lines.empty()) throw ConfigError("unknown check suite '" + suite + "'");

  json rows = json::array();
  bool ok = true;
  for (const auto& l : lines) {
    ok = ok && l.pass;
    std::printf("%s %-44s deviation=%- .6g tol=%.6g %s\n", l.pass ? "PASS" : "FAIL",
                l.name.c_str(), l.deviation, l.tolerance, l.detail.c_str());
    rows.push_back(json{{"name", l.name},
                        {"pass", l.pass},
                        {"deviation", l.deviation},
                        {"tolerance", l.tolerance},
                        {"detail", l.detail}});
  }
  std::printf("%s: %zu checks\n", ok ? "PASS" : "FAIL", lines.size());
  doc["rows"] = rows;
  doc["pass"] = ok;
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + c.out + "'");
    if (c.format == "json") {
      f << doc.dump(2) << "\n";
    } else {
      f << csv_header(doc["command"].get<std::string>(), doc["config"]);
      f << "name,pass,deviation,tolerance,detail\n";
      for (const auto& l : lines)
        f << l.name << "," << (l.pass ? 1 : 0) << "," << fmt17(l.deviation) << ","
          << fmt17(l.tolerance) << "," << l.detail << "\n";
    }
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// oracle

int run_oracle_quadrature(const Common& c, const std::string& h_expr, const std::string& q_expr,
                          double abs_tol) {
  json doc = config_base("oracle quadrature", c);
  doc["config"]["H"] = h_expr;
  doc["config"]["Q"] = q_expr;
  doc["config"]["abs_tol"] = abs_tol;
  QuadratureSpec spec;
  spec.abs_tol = abs_tol;
  const double v =
      mu_quadrature(to_spectral(parse_model(h_expr)), to_distribution(parse_model(q_expr)), spec);
  doc["result"] = json{{"measure", "mu"}, {"estimate", v}, {"std_error", 0.0},
                       {"method", "quadrature"}};
  emit(c, render(c, doc, [&] {
         return "measure,estimate,std_error,method\nmu," + fmt17(v) + ",0,quadrature\n";
       }));
  return 0;
}

int run_oracle_xi(const Common& c, const std::string& h_expr, double x1, double x2) {
  json doc = config_base("oracle xi", c);
  doc["config"]["H"] = h_expr;
  doc["config"]["x1"] = x1;
  doc["config"]["x2"] = x2;
  const XiValue v = xi_closed_form(to_spectral(parse_model(h_expr)), x1, x2);
  doc["result"] = json{{"xi", v.value}, {"singular", v.singular}};
  emit(c, render(c, doc, [&] {
         return "xi,singular\n" + fmt17(v.value) + "," + std::string(v.singular ? "1" : "0") +
                "\n";
       }));
  return 0;
}

int run_oracle_exact_domination(const Common& c, const std::string& family, int d,
                                std::uint64_t n) {
  json doc = config_base("oracle exact-domination", c);
  doc["config"]["family"] = family;
  doc["config"]["d"] = d;
  doc["config"]["n"] = n;
  Family fam;
  if (family == "h0") {
    fam = Family::independence;
  } else if (family == "hinf") {
    fam = Family::comonotone;
  } else {
    throw ConfigError("--family must be h0 or hinf");
  }
  const auto [pi, pi_bar] = exact_domination(fam, d, n);
  doc["result"] = json{{"pi_marginal", pi},
                       {"pi_complete", pi_bar},
                       {"n_pi_marginal", static_cast<double>(n) * pi},
                       {"n_pi_complete", static_cast<double>(n) * pi_bar}};
  emit(c, render(c, doc, [&] {
         return "n,pi_marginal,pi_complete,n_pi_marginal,n_pi_complete\n" + std::to_string(n) +
                "," + fmt17(pi) + "," + fmt17(pi_bar) + "," + fmt17(static_cast<double>(n) * pi) +
                "," + fmt17(static_cast<double>(n) * pi_bar) + "\n";
       }));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremal-dependence measures for max-stable models"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.set_config("--config", "", "TOML config file (flags override file values)");
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand("measure", "Monte Carlo / closed-form dependence measures");
  measure->require_subcommand(1);
  struct {
    Common c;
    std::string h, q, method = "auto";
    std::uint64_t n = 1000000;
    double x1 = 1.0, x2 = 1.0;
    std::vector<double> h_steps{1e-2, 1e-3, 1e-4};
  } m;
  for (const char* kind : {"mu", "lambda", "theta", "tail-coef", "xi"}) {
    auto* sub = measure->add_subcommand(kind);
    add_common(sub, m.c);
    sub->add_option("--H", m.h, "model expression for H")->required();
    if (std::string(kind) == "mu" || std::string(kind) == "lambda") {
      sub->add_option("--Q", m.q, "model expression for Q");
      sub->add_option("--n", m.n, "Monte Carlo sample count");
      sub->add_option("--method", m.method,
                      "mu: auto|spectral|direct|psi; lambda: auto|spectral|self|subset");
    }
    if (std::string(kind) == "theta") {
      sub->add_option("--n", m.n, "Monte Carlo sample count (spectral path)");
      sub->add_option("--method", m.method, "auto|closed|mc");
    }
    if (std::string(kind) == "xi") {
      sub->add_option("--x1", m.x1, "first coordinate");
      sub->add_option("--x2", m.x2, "second coordinate");
      sub->add_option("--h-list", m.h_steps, "finite-difference step sequence");
    }
  }

  // dominate
  auto* dom = app.add_subcommand("dominate", "finite-sample domination of block maxima");
  struct {
    Common c;
    std::string f, g, n_list = "1,10,100,1000";
    std::uint64_t reps = 1000000;
    bool brute_force = false;
  } d;
  add_common(dom, d.c);
  dom->add_option("--F", d.f, "block-sample law")->required();
  dom->add_option("--G", d.g, "dominating-vector law")->required();
  dom->add_option("--n-list", d.n_list, "comma-separated block sizes");
  dom->add_option("--reps", d.reps, "replications per block size");
  dom->add_flag("--brute-force", d.brute_force, "draw n-fold maxima even for max-stable F");

  // converge
  auto* conv = app.add_subcommand("converge", "finite-n convergence sweeps");
  conv->require_subcommand(1);
  struct {
    Common c;
    std::string h, q, n_list = "10,100,1000";
    std::uint64_t n_mc = 1000000;
  } cv;
  for (const char* kind : {"mu", "lambda"}) {
    auto* sub = conv->add_subcommand(kind);
    add_common(sub, cv.c);
    sub->add_option("--H", cv.h)->required();
    sub->add_option("--Q", cv.q)->required();
    sub->add_option("--n-list", cv.n_list, "comma-separated block sizes");
    sub->add_option("--n-mc", cv.n_mc, "Monte Carlo draws shared across block sizes");
  }

  // check
  auto* check = app.add_subcommand("check", "identity suites (PASS/FAIL lines)");
  check->require_subcommand(1);
  struct {
    Common c;
    std::string h, q;
    int d = 0;
    std::uint64_t n = 1000000;
    std::uint64_t reps = 10000000;
  } ck;
  for (const char* suite : {"bounds", "bivariate", "subsets", "kleje", "indep", "all"}) {
    auto* sub = check->add_subcommand(suite);
    add_common(sub, ck.c);
    sub->add_option("--H", ck.h, "model for bivariate/subsets suites");
    sub->add_option("--Q", ck.q, "model for bivariate/subsets suites");
    sub->add_option("--d", ck.d, "expected model dimension (validated)");
    sub->add_option("--n", ck.n, "samples per estimator");
    sub->add_option("--reps", ck.reps, "replications for the tail diagnostics");
  }

  // oracle
  auto* oracle = app.add_subcommand("oracle", "deterministic reference computations");
  oracle->require_subcommand(1);
  struct {
    Common c;
    std::string h, q = "h0(2)", family = "h0";
    double abs_tol = 1e-9;
    double x1 = 1.0, x2 = 1.0;
    int d = 2;
    std::uint64_t n = 1;
  } orc;
  {
    auto* sub = oracle->add_subcommand("quadrature");
    add_common(sub, orc.c, /*need_seed=*/false);
    sub->add_option("--H", orc.h)->required();
    sub->add_option("--Q", orc.q, "h0(2) or hinf(2)");
    sub->add_option("--abs-tol", orc.abs_tol);
  }
  {
    auto* sub = oracle->add_subcommand("xi");
    add_common(sub, orc.c, /*need_seed=*/false);
    sub->add_option("--H", orc.h)->required();
    sub->add_option("--x1", orc.x1);
    sub->add_option("--x2", orc.x2);
  }
  {
    auto* sub = oracle->add_subcommand("exact-domination");
    add_common(sub, orc.c, /*need_seed=*/false);
    sub->add_option("--family", orc.family, "h0 or hinf");
    sub->add_option("--d", orc.d, "dimension");
    sub->add_option("--n", orc.n, "block size");
  }

  // Let --config (defined on the root app) be written after a subcommand,
  // and let config-file sections reach subcommand options.
  const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands(nullptr)) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (measure->parsed()) {
      m.c.apply_hints();
      for (const char* kind : {"mu", "lambda", "theta", "tail-coef", "xi"}) {
        if (measure->get_subcommand(kind)->parsed()) {
          rc = run_measure(kind, m.c, m.h, m.q, m.n, m.method, m.x1, m.x2, m.h_steps);
        }
      }
    } else if (dom->parsed()) {
      d.c.apply_hints();
      rc = run_dominate(d.c, d.f, d.g, d.n_list, d.reps, d.brute_force);
    } else if (conv->parsed()) {
      cv.c.apply_hints();
      rc = run_converge(conv->get_subcommand("mu")->parsed() ? "mu" : "lambda", cv.c, cv.h, cv.q,
                        cv.n_list, cv.n_mc);
    } else if (check->parsed()) {
      ck.c.apply_hints();
      for (const char* suite : {"bounds", "bivariate", "subsets", "kleje", "indep", "all"}) {
        if (check->get_subcommand(suite)->parsed()) {
          rc = run_check(suite, ck.c, ck.h, ck.q, ck.d, ck.n, ck.reps);
        }
      }
    } else if (oracle->parsed()) {
      orc.c.apply_hints();
      if (oracle->get_subcommand("quadrature")->parsed()) {
        rc = run_oracle_quadrature(orc.c, orc.h, orc.q, orc.abs_tol);
      } else if (oracle->get_subcommand("xi")->parsed()) {
        rc = run_oracle_xi(orc.c, orc.h, orc.x1, orc.x2);
      } else {
        rc = run_oracle_exact_domination(orc.c, orc.family, orc.d, orc.n);
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::fprintf(stderr, "[exdep] done in %.3fs\n", elapsed);
  return rc;
}
