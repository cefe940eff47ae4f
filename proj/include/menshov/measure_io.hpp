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

#ifndef MENSHOV_MEASURE_IO_HPP
#define MENSHOV_MEASURE_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "menshov/measure.hpp"

namespace menshov {

/// Reads a real that may be written as a JSON number or as a multiple of pi
/// ("pi", "2pi", "0.5pi", "2*pi").
double parse_real(const nlohmann::json& j);

/// MeasureSpec <-> JSON. Field names: kind, domain, scale, atoms, levels,
/// total, table, components (each {"weight", "measure"}).
MeasureSpec measure_spec_from_json(const nlohmann::json& j);
nlohmann::json measure_spec_to_json(const MeasureSpec& spec);

MeasureSpec load_measure_spec(const std::filesystem::path& path);

}  // namespace menshov

#endif  // MENSHOV_MEASURE_IO_HPP
