// Copyright 2026 The menshov-measures Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "menshov/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "menshov/assembly.hpp"
#include "menshov/corrector.hpp"
#include "menshov/equidistribution.hpp"
#include "menshov/fourier_stieltjes.hpp"
#include "menshov/measure.hpp"
#include "menshov/measure_io.hpp"
#include "menshov/report.hpp"

namespace menshov {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json* find(const json& c, const char* key) {
  const auto it = c.find(key);
  return it == c.end() || it->is_null() ? nullptr : &*it;
}

double real_param(const json& c, const char* key, double fallback) {
  const json* v = find(c, key);
  return v ? parse_real(*v) : fallback;
}

double real_param(const json& c, const char* key) {
  const json* v = find(c, key);
  if (!v) throw ConfigError(std::string("missing parameter '") + key + "'");
  return parse_real(*v);
}

std::int64_t int_param(const json& c, const char* key, std::int64_t fallback) {
  const json* v = find(c, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  return v->get<std::int64_t>();
}

std::int64_t int_param(const json& c, const char* key) {
  if (!find(c, key)) throw ConfigError(std::string("missing parameter '") + key + "'");
  return int_param(c, key, 0);
}

bool bool_param(const json& c, const char* key, bool fallback) {
  const json* v = find(c, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(std::string("parameter '") + key + "' must be true or false");
  return v->get<bool>();
}

std::vector<double> real_list(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(parse_real(x));
  return out;
}

std::vector<std::int64_t> int_list(const json& c, const char* key, std::vector<std::int64_t> fallback) {
  const json* v = find(c, key);
  if (!v) return fallback;
  if (v->is_number_integer()) return {v->get<std::int64_t>()};
  if (!v->is_array()) throw ConfigError(std::string("parameter '") + key + "' must be an integer or a list");
  std::vector<std::int64_t> out;
  for (const auto& x : *v) {
    if (!x.is_number_integer()) throw ConfigError(std::string("parameter '") + key + "' must hold integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

Interval interval_param(const json& c, const char* key, Interval fallback) {
  const json* v = find(c, key);
  if (!v) return fallback;
  const auto xs = real_list(*v, key);
  if (xs.size() != 2) throw ConfigError(std::string("parameter '") + key + "' must be [lo, hi]");
  return {xs[0], xs[1]};
}

Measure load_measure(const RunConfig& rc) {
  const json* m = find(rc.config, "measure");
  if (!m) throw ConfigError("missing parameter 'measure'");
  if (m->is_string()) {
    fs::path p = m->get<std::string>();
    if (p.is_relative()) p = rc.base_dir / p;
    return build_measure(load_measure_spec(p));
  }
  return build_measure(measure_spec_from_json(*m));
}

json embedded_config(const RunConfig& rc) {
  json c = rc.config;
  for (const char* k : {"out", "plot", "workers"}) c.erase(k);
  return {{"subcommand", rc.subcommand}, {"parameters", c}};
}

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

StepFunction step_from_json(const json& j) {
  if (!j.is_object() || !j.contains("values")) throw ConfigError("step function needs 'values'");
  auto values = real_list(j.at("values"), "values");
  if (!j.contains("breakpoints")) return StepFunction::uniform(std::move(values));
  StepFunction s{real_list(j.at("breakpoints"), "breakpoints"), std::move(values)};
  return s;
}

ExitCode run_wiener_scan(const RunConfig& rc, std::ostream& log) {
  const json& c = rc.config;
  const Measure mu = load_measure(rc);
  const Interval window = interval_param(c, "I", mu.domain());
  const Measure nu = normalize(mu, window);
  const auto ks = int_list(c, "k", {1});
  const std::int64_t N = int_param(c, "N", 1000);
  const std::int64_t j = int_param(c, "j", 3);
  const int refinement = static_cast<int>(int_param(c, "refinement", kDefaultRefinement));
  if (N < 0 || j < 1) throw PreconditionError("wiener-scan needs N >= 0 and j >= 1");

  std::vector<std::int64_t> freqs;
  for (std::int64_t k : ks) {
    if (k == 0) throw PreconditionError("wiener-scan needs k != 0");
    for (std::int64_t n = 0; n <= N; ++n) freqs.push_back(n * k);
  }
  const CoefficientTable table(nu, freqs, refinement, rc.workers);
  const json cfg = embedded_config(rc);

  json summary{{"config", cfg}, {"atoms", atomic_part(nu).size()}, {"averages", json::array()},
               {"lambda", json::array()}};
  CsvWriter csv(rc.out_dir / "coefficients.csv", cfg, {"n", "k", "abs", "error", "average"});
  for (std::int64_t k : ks) {
    double running = 0.0;
    for (std::int64_t n = 0; n <= N; ++n) {
      const Coefficient& co = table.at(n * k);
      running += std::norm(co.value);
      csv.cell(static_cast<long long>(n)).cell(static_cast<long long>(k)).cell(std::abs(co.value)).cell(co.error);
      csv.cell(running / static_cast<double>(n + 1)).end_row();
    }
    const IndexSet lam = lambda_jk(table, j, k, N);
    summary["averages"].push_back({{"k", k}, {"N", N}, {"average", wiener_average(table, k, N)}});
    summary["lambda"].push_back({{"j", j}, {"k", k}, {"density", lam.density}});
  }
  write_json(rc.out_dir / "wiener.json", summary);
  log << "wiener-scan: wrote " << (rc.out_dir / "coefficients.csv").string() << '\n';
  return ExitCode::kOk;
}

ExitCode run_mset_limit(const RunConfig& rc, std::ostream& log) {
  const json& c = rc.config;
  const Measure mu = load_measure(rc);
  const Interval I = interval_param(c, "I", mu.domain());
  const double sigma = real_param(c, "sigma");
  const double tau = real_param(c, "tau");
  LambdaParams lp;
  lp.J = int_param(c, "J", 3);
  lp.K = int_param(c, "K", 3);
  lp.m = int_param(c, "m", 1);
  lp.N_max = int_param(c, "N_max", 2000);
  lp.refinement = static_cast<int>(int_param(c, "refinement", kDefaultRefinement));
  lp.density_floor = real_param(c, "density_floor", 0.5);
  lp.workers = rc.workers;

  const IndexSet lambda = build_lambda(normalize(mu, I), lp);
  const ConvergenceTable table = proposition_scan(mu, I, sigma, tau, lambda, rc.workers);
  const json cfg = embedded_config(rc);

  write_index_list(rc.out_dir / "lambda.txt", {lambda.members.begin(), lambda.members.end()});
  CsvWriter csv(rc.out_dir / "mset_limit.csv", cfg, {"n", "mass", "error"});
  std::vector<double> xs, ys;
  for (const auto& row : table.rows) {
    csv.cell(static_cast<long long>(row.n)).cell(row.mass).cell(row.error).end_row();
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(row.error);
  }
  json densities = json::array();
  for (const auto& p : lambda.provenance) densities.push_back({{"j", p.j}, {"k", p.k}, {"density", p.density}});
  write_json(rc.out_dir / "mset_limit.json",
             {{"config", cfg},
              {"target", table.target},
              {"tail_sup", table.tail_sup},
              {"tail_start", table.tail_start},
              {"members", lambda.members.size()},
              {"density", lambda.density},
              {"threshold_densities", densities},
              {"strict_hypothesis", table.strict},
              {"warnings", lambda.warnings}});
  if (rc.plot) {
    write_svg_line_plot(rc.out_dir / "mset_error.svg", xs, ys, "|mu(A_n) - tau mu(I)| along Lambda", "n",
                        "error");
  }
  log << "mset-limit: " << lambda.members.size() << " indices, tail sup error " << format_real(table.tail_sup)
      << '\n';
  return ExitCode::kOk;
}

ExitCode run_corrector(const RunConfig& rc, std::ostream& log) {
  const json& c = rc.config;
  CorrectorParams p;
  p.c = real_param(c, "c", 0.0);
  p.d = real_param(c, "d", kTwoPi);
  p.gamma = real_param(c, "gamma");
  p.eps = real_param(c, "eps");
  p.nu = int_param(c, "nu");
  p.r = int_param(c, "r", 0);
  if (p.r == 0) p.r = choose_r(p.c, p.d, p.gamma, p.eps, p.nu);
  const std::int64_t j_max = int_param(c, "j_max", 16);
  const std::int64_t x_grid = int_param(c, "x_grid", 64);

  const CorrectorLayout lay = layout(p);
  const PiecewiseLinearFn psi = build_psi(lay);
  const json cfg = embedded_config(rc);

  json removed = json::array(), E = json::array();
  for (const auto& iv : lay.removed) removed.push_back(interval_json(iv));
  for (const auto& iv : lay.E) E.push_back(interval_json(iv));
  write_json(rc.out_dir / "layout.json", {{"config", cfg},
                                          {"q", lay.q},
                                          {"r", p.r},
                                          {"delta", lay.delta},
                                          {"a_prime", lay.a_prime},
                                          {"b_prime", lay.b_prime},
                                          {"nodes", lay.nodes},
                                          {"removed", removed},
                                          {"E", E},
                                          {"lebesgue_E", lay.lebesgue_E()}});
  {
    CsvWriter csv(rc.out_dir / "psi.csv", cfg, {"breakpoint", "value"});
    for (std::size_t i = 0; i < psi.breakpoints().size(); ++i) {
      csv.cell(psi.breakpoints()[i]).cell(psi.values()[i]).end_row();
    }
  }

  const double nu = static_cast<double>(p.nu);
  bool equal_on_E = true;
  for (const auto& iv : lay.E) {
    for (double t : {0.0, 0.5, 1.0}) equal_on_E = equal_on_E && psi(affine_point(iv, t)) == p.gamma;
  }
  const double running = running_integral_sup(psi);
  json props{{"config", cfg},
             {"sup_abs", psi.sup_abs()},
             {"sup_bound", 2.0 * nu * std::abs(p.gamma)},
             {"property_sup", psi.sup_abs() <= 2.0 * nu * std::abs(p.gamma)},
             {"property_equals_gamma_on_E", equal_on_E},
             {"running_integral_sup", running},
             {"eps", p.eps},
             {"property_running_integral", running < p.eps},
             {"removed_count", lay.removed.size()},
             {"expected_removed_count", (p.nu - 4) * p.r},
             {"lebesgue_E", lay.lebesgue_E()},
             {"lebesgue_bound", (p.d - p.c) * (1.0 - 5.0 / nu)},
             {"layout_bound_ok", lay.lebesgue_E() >= (p.d - p.c) * (1.0 - 5.0 / nu)}};
  if (j_max > 0) {
    const KernelSweep sweep = kernel_sup(psi, p.nu, p.gamma, j_max, x_grid, rc.workers);
    CsvWriter csv(rc.out_dir / "kernel.csv", cfg, {"j", "x", "integral", "bound_ratio"});
    for (const auto& row : sweep.rows) {
      csv.cell(static_cast<long long>(row.j)).cell(row.x).cell(row.integral).cell(row.bound_ratio).end_row();
    }
    props["kernel"] = {{"j_max", j_max}, {"x_grid", x_grid},        {"sup", sweep.sup},
                       {"b_hat", sweep.b_hat}, {"argmax_j", sweep.argmax_j}, {"argmax_x", sweep.argmax_x}};
  }
  write_json(rc.out_dir / "properties.json", props);
  log << "corrector: q=" << lay.q << ", running integral sup " << format_real(running) << '\n';
  return ExitCode::kOk;
}

json claim_json(const ClaimResult& r, const json& cfg) {
  json cells = json::array();
  json r_per_cell = json::array();
  for (const auto& c : r.cells) {
    r_per_cell.push_back(c.r);
    cells.push_back({{"J", interval_json(c.J)},
                     {"gamma", c.gamma},
                     {"eps", c.eps},
                     {"r", c.r},
                     {"r_min", c.r_min},
                     {"mu_J", c.mu_J},
                     {"mu_core", c.mu_core},
                     {"mu_E", c.mu_E},
                     {"target_met", c.target_met},
                     {"running_sup", c.running_sup},
                     {"sup_bound_ok", c.sup_bound_ok},
                     {"equals_gamma_on_E", c.equals_gamma_on_E},
                     {"running_integral_ok", c.running_integral_ok}});
  }
  json scan = json::array();
  for (const auto& s : r.union_scan) scan.push_back({{"kappa", s.kappa}, {"mass", s.mass}, {"ratio", s.ratio}});
  json shifts = json::array();
  for (const auto& s : r.shifts) shifts.push_back({{"from", s.from}, {"to", s.to}});
  const double nu = static_cast<double>(r.nu);
  return {{"config", cfg},
          {"nu", r.nu},
          {"rho", r.rho},
          {"kappa", r.kappa},
          {"kappa_source", r.kappa_source},
          {"r_per_cell", r_per_cell},
          {"mu_E", r.mu_E},
          {"mu_total", r.mu_total},
          {"ratio", r.mu_total > 0.0 ? r.mu_E / r.mu_total : 1.0},
          {"bound", 1.0 - 7.0 / nu},
          {"certified", r.certified},
          {"union_mass", r.union_mass},
          {"union_target_met", r.union_target_met},
          {"union_scan", scan},
          {"lambda_density", r.lambda_density},
          {"shifts", shifts},
          {"diagnostics", r.diagnostics},
          {"cells", cells}};
}

void write_intervals(const fs::path& path, const json& cfg, const std::vector<Interval>& ivs) {
  CsvWriter csv(path, cfg, {"lo", "hi"});
  for (const auto& iv : ivs) csv.cell(iv.lo).cell(iv.hi).end_row();
}

EpsilonSchedule schedule_from(const json& c) {
  EpsilonSchedule s;
  s.eps0 = real_param(c, "eps0", 1.0);
  const json* k = find(c, "eps_schedule");
  if (!k || (k->is_string() && k->get<std::string>() == "uniform")) {
    s.kind = EpsilonSchedule::Kind::kUniform;
  } else if (k->is_string() && k->get<std::string>() == "geometric") {
    s.kind = EpsilonSchedule::Kind::kGeometric;
  } else if (k->is_array()) {
    s.kind = EpsilonSchedule::Kind::kExplicit;
    s.values = real_list(*k, "eps_schedule");
  } else {
    throw ConfigError("eps_schedule must be \"uniform\", \"geometric\" or a list");
  }
  return s;
}

ExitCode run_claim(const RunConfig& rc, std::ostream& log) {
  const json& c = rc.config;
  const Measure mu = load_measure(rc);
  const json* step = find(c, "step");
  if (!step) throw ConfigError("missing parameter 'step'");
  ClaimOptions o;
  o.nu = int_param(c, "nu");
  o.eps = schedule_from(c);
  o.kappa_cap = int_param(c, "kappa_cap", 512);
  o.r_cap = int_param(c, "r_cap", 512);
  o.lambda_walk = bool_param(c, "lambda_walk", true);
  o.refinement = static_cast<int>(int_param(c, "refinement", kDefaultRefinement));
  o.workers = rc.workers;

  const ClaimResult r = claim_run(step_from_json(*step), mu, o);
  const json cfg = embedded_config(rc);
  write_json(rc.out_dir / "claim.json", claim_json(r, cfg));
  write_intervals(rc.out_dir / "E.csv", cfg, r.E);
  log << "claim: kappa=" << r.kappa << ", mu(E)/mu = " << format_real(r.mu_E / r.mu_total)
      << (r.certified ? " (certified)" : " (NOT certified)") << '\n';
  return r.certified ? ExitCode::kOk : ExitCode::kUncertified;
}

ExitCode run_demo(const RunConfig& rc, std::ostream& log) {
  const json& c = rc.config;
  const Measure mu = load_measure(rc);
  const json* fj = find(c, "f");
  if (!fj) throw ConfigError("missing parameter 'f'");
  const auto f = function_from_json(*fj);
  DemoOptions o;
  if (find(c, "eps")) {
    o.eps = real_param(c, "eps");
  } else {
    o.eps = real_param(c, "eps_fraction") * mu.total_mass();
  }
  o.uniform_gap = real_param(c, "uniform_gap", 0.1);
  o.eps0 = real_param(c, "eps0", 1.0);
  o.kappa_cap = int_param(c, "kappa_cap", 512);
  o.r_cap = int_param(c, "r_cap", 512);
  o.max_rho = int_param(c, "max_rho", 4096);
  o.workers = rc.workers;
  const auto N_list = int_list(c, "N_list", {4, 8, 16, 32, 64, 128, 256});
  const std::int64_t grid = int_param(c, "grid", 2048);

  const DemoResult d = theorem_demo(f, mu, o);
  const PartialSumTable ps = partial_sum_diagnostics(d.g, N_list, grid);
  const json cfg = embedded_config(rc);
  {
    CsvWriter csv(rc.out_dir / "g.csv", cfg, {"breakpoint", "value"});
    for (std::size_t i = 0; i < d.g.breakpoints().size(); ++i) {
      csv.cell(d.g.breakpoints()[i]).cell(d.g.values()[i]).end_row();
    }
  }
  {
    CsvWriter csv(rc.out_dir / "partial_sums.csv", cfg, {"N", "sup_error"});
    for (const auto& row : ps.rows) csv.cell(static_cast<long long>(row.N)).cell(row.sup_error).end_row();
  }
  write_intervals(rc.out_dir / "E.csv", cfg, d.claim.E);
  json rows = json::array();
  for (const auto& row : ps.rows) rows.push_back({{"N", row.N}, {"sup_error", row.sup_error}});
  write_json(rc.out_dir / "exceptional.json",
             {{"config", cfg},
              {"nu", d.nu},
              {"rho", d.claim.rho},
              {"kappa", d.claim.kappa},
              {"eps", d.eps},
              {"exceptional_mass", d.exceptional_mass},
              {"below_eps", d.exceptional_mass < d.eps},
              {"mu_total", d.claim.mu_total},
              {"mu_E", d.claim.mu_E},
              {"certified", d.claim.certified},
              {"sup_f_minus_phi", d.sup_f_minus_phi},
              {"sup_f_minus_g_on_E", d.sup_f_minus_g_on_E},
              {"g_compactly_supported", d.g.is_compactly_supported()},
              {"partial_sums", rows},
              {"monotone_fraction", ps.monotone_fraction}});
  log << "demo: nu=" << d.nu << ", exceptional mass " << format_real(d.exceptional_mass) << " (eps "
      << format_real(d.eps) << ")\n";
  return d.exceptional_mass < d.eps ? ExitCode::kOk : ExitCode::kUncertified;
}

}  // namespace

std::function<double(double)> function_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("function needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "linear") {
    const double a = real_param(j, "slope", 1.0), b = real_param(j, "intercept", 0.0);
    return [a, b](double x) { return a * x + b; };
  }
  if (kind == "constant") {
    const double v = real_param(j, "value", 0.0);
    return [v](double) { return v; };
  }
  if (kind == "sin") {
    const double amp = real_param(j, "amplitude", 1.0), w = real_param(j, "frequency", 1.0),
                 ph = real_param(j, "phase", 0.0);
    return [amp, w, ph](double x) { return amp * std::sin(w * x + ph); };
  }
  if (kind == "smooth_step") {
    const double left = real_param(j, "left", -1.0), right = real_param(j, "right", 1.0),
                 at = real_param(j, "at", std::numbers::pi),
                 width = real_param(j, "width", 0.05);
    if (!(width > 0.0)) throw ConfigError("smooth_step width must be positive");
    return [=](double x) { return left + (right - left) * 0.5 * (1.0 + std::tanh((x - at) / width)); };
  }
  if (kind == "step") {
    StepFunction s = step_from_json(j);
    s.validate();
    return [s = std::move(s)](double x) { return s(x); };
  }
  if (kind == "table") {
    if (!j.contains("x") || !j.contains("y")) throw ConfigError("table function needs 'x' and 'y'");
    PiecewiseLinearFn p(real_list(j.at("x"), "x"), real_list(j.at("y"), "y"));
    return [p = std::move(p)](double x) { return p(x); };
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

RunConfig load_run_config(const std::string& subcommand, const fs::path& path) {
  RunConfig rc;
  rc.subcommand = subcommand;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    in >> rc.config;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  if (!rc.config.is_object()) throw ConfigError("config must be a JSON object");
  rc.base_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (const json* v = find(rc.config, "out")) rc.out_dir = v->get<std::string>();
  rc.plot = bool_param(rc.config, "plot", false);
  rc.workers = static_cast<int>(int_param(rc.config, "workers", 1));
  return rc;
}

ExitCode run(const RunConfig& rc, std::ostream& log) {
  try {
    fs::create_directories(rc.out_dir);
    if (rc.subcommand == "wiener-scan") return run_wiener_scan(rc, log);
    if (rc.subcommand == "mset-limit") return run_mset_limit(rc, log);
    if (rc.subcommand == "corrector") return run_corrector(rc, log);
    if (rc.subcommand == "claim") return run_claim(rc, log);
    if (rc.subcommand == "demo") return run_demo(rc, log);
    log << "error: unknown subcommand '" << rc.subcommand << "'\n";
    return ExitCode::kConfigError;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::kConfigError;
  } catch (const json::exception& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::kConfigError;
  } catch (const fs::filesystem_error& e) {
    log << "config error: " << e.what() << '\n';
    return ExitCode::kConfigError;
  } catch (const PreconditionError& e) {
    log << "precondition violated: " << e.what() << '\n';
    return ExitCode::kPrecondition;
  } catch (const CertificationError& e) {
    log << "not certified: " << e.what() << '\n';
    return ExitCode::kUncertified;
  } catch (const NumericError& e) {
    log << "numeric failure: " << e.what() << '\n';
    return ExitCode::kNumericFailure;
  }
}

}  // namespace menshov
