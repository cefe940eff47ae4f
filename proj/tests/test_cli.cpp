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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "menshov/cli.hpp"

using namespace menshov;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("menshov_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig make(const std::string& sub, json config, const fs::path& out) {
  RunConfig rc;
  rc.subcommand = sub;
  rc.config = std::move(config);
  rc.out_dir = out;
  return rc;
}

const json kCantor = {{"kind", "cantor"}, {"domain", {0, "2pi"}}, {"levels", 40}};

}  // namespace

TEST_CASE("wiener-scan on an atom: average column is 1") {
  const fs::path out = scratch("wiener");
  std::ostringstream log;
  const json cfg = {{"measure", {{"kind", "atomic"}, {"domain", {0, 1}}, {"atoms", {{0.4, 2.0}}}}}, {"N", 50}};
  REQUIRE(run(make("wiener-scan", cfg, out), log) == ExitCode::kOk);
  std::ifstream in(out / "coefficients.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# config: ", 0) == 0);
  std::getline(in, line);
  CHECK(line == "n,k,abs,error,average");
  int rows = 0;
  while (std::getline(in, line)) {
    const double avg = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(avg == doctest::Approx(1.0).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 51);
}

TEST_CASE("mset-limit on Lebesgue: zero error column") {
  const fs::path out = scratch("mset");
  std::ostringstream log;
  const json cfg = {{"measure", {{"kind", "lebesgue"}, {"domain", {0, "2pi"}}}},
                    {"I", {1, 4}}, {"sigma", 0.1}, {"tau", 0.5}, {"N_max", 200}};
  RunConfig rc = make("mset-limit", cfg, out);
  rc.plot = true;
  REQUIRE(run(rc, log) == ExitCode::kOk);
  CHECK(fs::exists(out / "mset_error.svg"));
  CHECK(fs::exists(out / "lambda.txt"));
  std::ifstream in(out / "mset_limit.csv");
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  while (std::getline(in, line)) CHECK(std::stod(line.substr(line.rfind(',') + 1)) <= 1e-12);
}

TEST_CASE("claim on cantor: certified report") {
  const fs::path out = scratch("claim");
  std::ostringstream log;
  const json cfg = {{"measure", kCantor}, {"nu", 16}, {"step", {{"values", {1.0}}}}};
  REQUIRE(run(make("claim", cfg, out), log) == ExitCode::kOk);
  const json doc = json::parse(slurp(out / "claim.json"));
  for (const char* key : {"nu", "rho", "kappa", "r_per_cell", "mu_E", "mu_total", "certified", "cells"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["certified"] == true);
  CHECK(doc["mu_E"].get<double>() / doc["mu_total"].get<double>() >= 0.5625);
  CHECK(doc["config"]["subcommand"] == "claim");
  for (const auto& cell : doc["cells"]) {
    CHECK(cell["sup_bound_ok"] == true);
    CHECK(cell["equals_gamma_on_E"] == true);
    CHECK(cell["running_integral_ok"] == true);
  }
  CHECK(fs::exists(out / "E.csv"));
}

TEST_CASE("corrector and demo artifacts") {
  const fs::path out = scratch("corrector");
  std::ostringstream log;
  const json cfg = {{"c", 0}, {"d", "2pi"}, {"gamma", 1.0}, {"eps", 1.0}, {"nu", 16}, {"j_max", 4}, {"x_grid", 8}};
  REQUIRE(run(make("corrector", cfg, out), log) == ExitCode::kOk);
  const json props = json::parse(slurp(out / "properties.json"));
  CHECK(props["property_sup"] == true);
  CHECK(props["property_equals_gamma_on_E"] == true);
  CHECK(props["property_running_integral"] == true);
  CHECK(props["removed_count"] == 24);
  for (const char* f : {"layout.json", "psi.csv", "kernel.csv"}) CHECK(fs::exists(out / f));

  const fs::path demo = scratch("demo");
  const json dcfg = {{"measure", kCantor}, {"f", {{"kind", "linear"}}}, {"eps_fraction", 0.05}};
  REQUIRE(run(make("demo", dcfg, demo), log) == ExitCode::kOk);
  const json ex = json::parse(slurp(demo / "exceptional.json"));
  CHECK(ex["exceptional_mass"].get<double>() < ex["eps"].get<double>());
  for (const char* f : {"g.csv", "partial_sums.csv", "E.csv"}) CHECK(fs::exists(demo / f));
}

TEST_CASE("reruns are byte-identical") {
  const json cfg = {{"measure", kCantor}, {"nu", 20}, {"step", {{"values", {1.0, -0.5, 2.0}}}}};
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  std::ostringstream log;
  REQUIRE(run(make("claim", cfg, a), log) == ExitCode::kOk);
  RunConfig rb = make("claim", cfg, b);
  rb.workers = 3;
  REQUIRE(run(rb, log) == ExitCode::kOk);
  CHECK(slurp(a / "claim.json") == slurp(b / "claim.json"));
  CHECK(slurp(a / "E.csv") == slurp(b / "E.csv"));
}

TEST_CASE("exit codes") {
  std::ostringstream log;
  const fs::path out = scratch("codes");
  CHECK(run(make("nonsense", json::object(), out), log) == ExitCode::kConfigError);
  CHECK(run(make("claim", {{"nu", 16}}, out), log) == ExitCode::kConfigError);
  CHECK(run(make("corrector", {{"gamma", "x"}, {"eps", 1}, {"nu", 16}}, out), log) == ExitCode::kConfigError);
  const json atom = {{"kind", "atomic"}, {"domain", {0, 1}}, {"atoms", {{0.5, 1.0}}}};
  CHECK(run(make("mset-limit", {{"measure", atom}, {"sigma", 0.1}, {"tau", 0.2}}, out), log) ==
        ExitCode::kPrecondition);
  CHECK(run(make("corrector", {{"gamma", 1}, {"eps", 1}, {"nu", 8}}, out), log) == ExitCode::kPrecondition);
  const json tight = {{"measure", kCantor}, {"nu", 16}, {"step", {{"values", {1.0}}}},
                      {"kappa_cap", 1}, {"lambda_walk", false}};
  CHECK(run(make("claim", tight, out), log) == ExitCode::kUncertified);
  const json coarse = {{"measure", kCantor}, {"N", 3000}, {"refinement", 1}};
  CHECK(run(make("wiener-scan", coarse, out), log) == ExitCode::kNumericFailure);
}

TEST_CASE("binary: config file round trip and exit status") {
  const fs::path dir = scratch("binary");
  {
    std::ofstream(dir / "mu.json") << R"({"kind": "lebesgue", "domain": [0, "2pi"]})";
    std::ofstream(dir / "run.json") << R"({"measure": "mu.json", "sigma": 0.2, "tau": 0.3, "N_max": 50})";
    std::ofstream(dir / "broken.json") << "{ not json";
  }
  const std::string bin = MENSHOV_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("mset-limit --config " + (dir / "run.json").string() + " --out " + (dir / "o").string()) == 0);
  CHECK(fs::exists(dir / "o" / "mset_limit.csv"));
  CHECK(status("mset-limit --config " + (dir / "broken.json").string()) == 2);
  CHECK(status("mset-limit") == 2);
  CHECK(status("frobnicate --config x") == 2);
}
