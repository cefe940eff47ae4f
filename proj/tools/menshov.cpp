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

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "menshov/cli.hpp"
#include "menshov/common.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Measure-theoretic Menshov correction toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool plot = false;
  int workers = 0;

  for (const char* name : {"wiener-scan", "mset-limit", "corrector", "claim", "demo"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--plot", plot, "also write SVG plots where available");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(menshov::ExitCode::kConfigError);
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  menshov::RunConfig rc;
  try {
    rc = menshov::load_run_config(subcommand, config_path);
  } catch (const menshov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(menshov::ExitCode::kConfigError);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(menshov::ExitCode::kConfigError);
  }
  if (!out_dir.empty()) rc.out_dir = out_dir;
  if (plot) rc.plot = true;
  if (workers > 0) rc.workers = workers;
  return static_cast<int>(menshov::run(rc, std::cerr));
}
