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

#ifndef MENSHOV_CLI_HPP
#define MENSHOV_CLI_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace menshov {

enum class ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kPrecondition = 3,
  kUncertified = 4,
  kNumericFailure = 5,
};

/// One batch run. `config` holds the subcommand's parameters; relative
/// measure-spec paths resolve against `base_dir`.
struct RunConfig {
  std::string subcommand;  // wiener-scan, mset-limit, corrector, claim, demo
  nlohmann::json config = nlohmann::json::object();
  std::filesystem::path base_dir = ".";
  std::filesystem::path out_dir = "out";
  bool plot = false;
  int workers = 1;
};

/// Reads the JSON config file; `out`, `plot` and `workers` keys in it are
/// defaults that the caller may override. Throws ConfigError.
RunConfig load_run_config(const std::string& subcommand, const std::filesystem::path& path);

/// Executes the run, writes its artifacts under out_dir, reports progress and
/// errors on `log`, and maps failures onto exit codes.
ExitCode run(const RunConfig& config, std::ostream& log);

/// Function handle from a JSON description: linear, constant, sin,
/// smooth_step, step or table. Throws ConfigError.
std::function<double(double)> function_from_json(const nlohmann::json& j);

}  // namespace menshov

#endif  // MENSHOV_CLI_HPP
