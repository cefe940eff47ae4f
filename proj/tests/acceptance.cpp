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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "menshov/assembly.hpp"
#include "menshov/cli.hpp"
#include "menshov/corrector.hpp"
#include "menshov/equidistribution.hpp"
#include "menshov/fourier_stieltjes.hpp"
#include "menshov/measure.hpp"
#include "oracles.hpp"

using namespace menshov;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("AC%d %s  %s  [%s]\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Measure lebesgue() { return build_measure(MeasureSpec::lebesgue({0.0, kTwoPi})); }
Measure cantor_2pi() { return build_measure(MeasureSpec::cantor({0.0, kTwoPi}, 40)); }
Measure mixture_2pi() {
  return build_measure(MeasureSpec::mixture(
      {0.0, kTwoPi}, {{0.6, MeasureSpec::cantor({0.0, kTwoPi}, 40)},
                      {0.4, MeasureSpec::lebesgue({0.0, kTwoPi}, 1.0 / kTwoPi)}}));
}

// Random M-set spec with I inside `dom`, n <= n_max, sigma > 0, sigma + tau < 1.
MSetSpec random_spec(std::mt19937_64& rng, const Interval& dom, std::int64_t n_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = affine_point(dom, 0.9 * u(rng));
  const double b = a + (dom.hi - a) * (0.05 + 0.95 * u(rng));
  const double sigma = 0.001 + 0.9 * u(rng);
  const double tau = (1.0 - sigma) * (0.001 + 0.998 * u(rng));
  const auto n = std::uniform_int_distribution<std::int64_t>(1, n_max)(rng);
  return {{a, std::min(b, dom.hi)}, n, sigma, tau};
}

void ac1() {
  const auto t0 = Clock::now();
  const Measure mu = lebesgue();
  std::mt19937_64 rng(20261017);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const MSetSpec s = random_spec(rng, {0.0, kTwoPi}, 5000);
    worst = std::max(worst, std::abs(mset_mass(mu, s) - s.tau * s.I.length()));
  }
  const double t = seconds_since(t0);
  report(1, worst <= 1e-10 && t < 5.0, "Lebesgue M-set exactness",
         fmt("max |err| = %.3g (tol 1e-10), %.2f s (limit 5 s)", worst, t));
}

void ac2() {
  const auto t0 = Clock::now();
  const Measure mu = build_measure(MeasureSpec::cantor({0.0, 1.0}, 40));
  LambdaParams p;
  p.J = 3;
  p.K = 3;
  p.m = 1;
  p.N_max = 2000;
  const IndexSet lam = build_lambda(normalize(mu, {0.0, 1.0}), p);
  const ConvergenceTable table = proposition_scan(mu, {0.0, 1.0}, 0.2, 0.3, lam);
  const double t = seconds_since(t0);
  report(2, table.tail_sup <= 0.02 && t < 60.0, "M-set convergence tail-sup, cantor(40), sigma=0.2, tau=0.3",
         fmt("tail sup = %.6g over n >= %.0f (tol 0.02), %.2f s (limit 60 s)", table.tail_sup,
             static_cast<double>(table.tail_start), t));
}

void ac3() {
  std::mt19937_64 rng(3);
  const Measure pool[] = {lebesgue(), cantor_2pi(), mixture_2pi()};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Measure& mu = pool[i % 3];
    MSetSpec s = random_spec(rng, mu.domain(), 3000);
    while (mu.interval_mass(s.I) <= 0.0) s = random_spec(rng, mu.domain(), 3000);
    const double lhs = mset_mass(mu, s);
    const double rhs = mu.interval_mass(s.I) * pushforward_arc_mass(normalize(mu, s.I), s.n, {s.sigma, s.tau});
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  report(3, worst <= 1e-9, "Pushforward identity on 100 random pairs", fmt("max |diff| = %.3g (tol 1e-9)", worst));
}

void ac4() {
  const Measure atoms = build_measure(MeasureSpec::atomic({0.0, 1.0}, {{0.25, 0.3}, {0.6, 0.7}}));
  const double a = wiener_average(atoms, 1, 5000);
  const double c = wiener_average(build_measure(MeasureSpec::cantor({0.0, 1.0}, 40)), 1, 5000);
  report(4, std::abs(a - 0.58) <= 0.01 && c <= 0.02, "Wiener averages at N=5000",
         fmt("atomic %.6g (target 0.58 +- 0.01), cantor %.6g (tol 0.02)", a, c));
}

void ac5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad_sup = 0, bad_E = 0, bad_run = 0, bad_layout = 0;
  for (int i = 0; i < 50; ++i) {
    CorrectorParams p;
    p.c = kTwoPi * 0.5 * u(rng);
    p.d = p.c + (kTwoPi - p.c) * (0.05 + 0.95 * u(rng));
    p.gamma = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.01 + 5.0 * u(rng));
    p.eps = 0.001 + u(rng);
    p.nu = std::uniform_int_distribution<std::int64_t>(9, 64)(rng);
    p.r = choose_r(p.c, p.d, p.gamma, p.eps, p.nu) + std::uniform_int_distribution<std::int64_t>(0, 3)(rng);
    const CorrectorLayout l = layout(p);
    const PiecewiseLinearFn psi = build_psi(l);
    const double nu = static_cast<double>(p.nu);
    if (!(psi.sup_abs() <= 2.0 * nu * std::abs(p.gamma))) ++bad_sup;
    std::uniform_int_distribution<std::size_t> pick(0, l.E.size() - 1);
    for (int k = 0; k < 1000; ++k) {
      const Interval& iv = l.E[pick(rng)];
      if (psi(affine_point(iv, u(rng))) != p.gamma) {
        ++bad_E;
        break;
      }
    }
    if (p.admissible() && !(running_integral_sup(psi) < p.eps)) ++bad_run;
    if (static_cast<std::int64_t>(l.removed.size()) != (p.nu - 4) * p.r ||
        !(l.lebesgue_E() >= (p.d - p.c) * (1.0 - 5.0 / nu))) {
      ++bad_layout;
    }
  }
  report(5, bad_sup + bad_E + bad_run + bad_layout == 0, "Corrector properties on 50 random parameter sets",
         "violations: sup " + std::to_string(bad_sup) + ", psi=gamma on E " + std::to_string(bad_E) +
             ", running integral " + std::to_string(bad_run) + ", layout " + std::to_string(bad_layout));
}

void ac6() {
  const auto t0 = Clock::now();
  double lo = 1e300, hi = 0.0;
  std::string cells;
  for (std::int64_t nu : {16, 32, 64}) {
    for (std::int64_t r : {1, 2}) {
      CorrectorParams p;
      p.c = 0.0;
      p.d = kTwoPi;
      p.gamma = 1.0;
      p.eps = 2.0;
      p.nu = nu;
      p.r = r;
      const KernelSweep s = kernel_sup(build_psi(layout(p)), nu, 1.0, 64, 256);
      lo = std::min(lo, s.b_hat);
      hi = std::max(hi, s.b_hat);
      cells += fmt(" (%.0f,%.0f)=%.4g", static_cast<double>(nu), static_cast<double>(r), s.b_hat);
    }
  }
  const double t = seconds_since(t0);
  report(6, hi / lo <= 4.0 && t < 600.0, "Kernel constant stability",
         fmt("max/min B = %.4g (tol 4), %.1f s (limit 600 s);", hi / lo, t) + cells);
}

void ac7() {
  struct Case {
    const char* name;
    Measure mu;
  };
  const Case cases[] = {{"lebesgue", lebesgue()}, {"cantor", cantor_2pi()}, {"0.6 cantor + 0.4 lebesgue", mixture_2pi()}};
  const StepFunction phis[] = {StepFunction::uniform({1.0}), StepFunction::uniform({1.0, -0.5, 2.0, 0.25})};
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    for (const StepFunction& phi : phis) {
      ClaimOptions o;
      o.nu = 16;
      o.kappa_cap = 512;
      o.r_cap = 512;
      const ClaimResult r = claim_run(phi, c.mu, o);
      const double ratio = r.mu_E / r.mu_total;
      const bool pass = r.certified && ratio >= 9.0 / 16.0 && r.kappa <= 512 && r.all_cell_properties();
      std::int64_t r_max = 0;
      for (const auto& cell : r.cells) r_max = std::max(r_max, cell.r);
      ok = ok && pass && r_max <= 512;
      detail += std::string(" ") + c.name + fmt(" rho=%.0f: ratio %.4f kappa %.0f", static_cast<double>(r.rho), ratio,
                                                static_cast<double>(r.kappa)) +
                fmt(" r<=%.0f;", static_cast<double>(r_max));
    }
  }
  report(7, ok, "claim_run bound mu(E) >= 9/16 mu at nu=16", "caps kappa,r <= 512;" + detail);
}

void ac8() {
  const Measure mu = cantor_2pi();
  DemoOptions o;
  o.eps = 0.05 * mu.total_mass();
  const DemoResult d = theorem_demo([](double x) { return x; }, mu, o);

  // continuity across every cell boundary: each corrector vanishes at both ends
  // and consecutive supports meet at the same point
  bool continuous = d.g(0.0) == 0.0 && d.g(kTwoPi) == 0.0;
  for (std::size_t k = 0; k < d.claim.cells.size(); ++k) {
    const auto& psi = d.claim.cells[k].psi;
    continuous = continuous && psi.values().front() == 0.0 && psi.values().back() == 0.0;
    if (k + 1 < d.claim.cells.size()) {
      continuous = continuous && psi.breakpoints().back() == d.claim.cells[k + 1].psi.breakpoints().front();
    }
  }
  for (std::size_t i = 0; i < d.g.breakpoints().size(); ++i) {
    continuous = continuous && d.g(d.g.breakpoints()[i]) == d.g.values()[i];
  }

  const PiecewiseLinearFn tri({0.0, std::numbers::pi, kTwoPi}, {std::numbers::pi, 0.0, std::numbers::pi});
  const auto coef = fourier_coefficients(tri, 256);
  double coef_err = 0.0;
  for (std::size_t n = 0; n < coef.size(); ++n) {
    coef_err = std::max(coef_err, std::abs(coef[n] - oracle::triangle_coefficient(static_cast<std::int64_t>(n))));
  }
  const PartialSumTable ps = partial_sum_diagnostics(tri, {8, 16, 32, 64, 128, 256}, 4096);
  // least-squares slope of log error against log N
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ps.rows.size());
  for (const auto& row : ps.rows) {
    const double x = std::log(static_cast<double>(row.N)), y = std::log(row.sup_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const bool decreasing = ps.monotone_fraction == 1.0;
  const bool rate = slope <= -0.9 && slope >= -1.1;

  const bool ok = d.exceptional_mass < d.eps && continuous && coef_err <= 1e-8 && decreasing && rate;
  report(8, ok, "Theorem demo f(x)=x on cantor, eps=0.05 mu",
         fmt("exceptional %.6g < eps %.6g; ", d.exceptional_mass, d.eps) +
             std::string("g continuous ") + (continuous ? "yes" : "no") +
             fmt("; triangle coef err %.3g (tol 1e-8), log-log slope %.4f", coef_err, slope) +
             (decreasing ? ", decreasing" : ", not decreasing"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void ac9() {
  const json cantor = {{"kind", "cantor"}, {"domain", {0, "2pi"}}, {"levels", 40}};
  const json unit = {{"kind", "cantor"}, {"domain", {0, 1}}, {"levels", 40}};
  const std::vector<std::pair<std::string, json>> runs = {
      {"wiener-scan", {{"measure", unit}, {"k", {1, 2}}, {"N", 500}}},
      {"mset-limit", {{"measure", unit}, {"sigma", 0.2}, {"tau", 0.3}, {"N_max", 300}}},
      {"corrector", {{"gamma", 1.5}, {"eps", 0.3}, {"nu", 16}, {"j_max", 8}, {"x_grid", 16}}},
      {"claim", {{"measure", cantor}, {"nu", 16}, {"step", {{"values", {1.0, -1.0, 0.5}}}}}},
      {"demo", {{"measure", cantor}, {"f", {{"kind", "sin"}}}, {"eps_fraction", 0.1}}}};
  const fs::path root = fs::temp_directory_path() / "menshov_acceptance_ac9";
  fs::remove_all(root);
  std::size_t files = 0, mismatched = 0;
  bool ran = true;
  for (const auto& [sub, cfg] : runs) {
    std::ostringstream log;
    for (const char* pass : {"a", "b"}) {
      RunConfig rc;
      rc.subcommand = sub;
      rc.config = cfg;
      rc.out_dir = root / pass / sub;
      rc.plot = true;
      rc.workers = pass[0] == 'a' ? 1 : 2;
      ran = ran && run(rc, log) == ExitCode::kOk;
    }
    for (const auto& e : fs::directory_iterator(root / "a" / sub)) {
      ++files;
      if (slurp(e.path()) != slurp(root / "b" / sub / e.path().filename())) ++mismatched;
    }
  }
  report(9, ran && files > 0 && mismatched == 0, "Deterministic reports",
         std::to_string(files) + " files compared, " + std::to_string(mismatched) + " differ");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "raised an exception", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
