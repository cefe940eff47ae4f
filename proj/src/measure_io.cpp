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

#include "menshov/measure_io.hpp"

#include <fstream>
#include <numbers>
#include <string>

namespace menshov {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError("measure spec: " + what); }

Interval read_interval(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("domain must be a two-element array");
  return {parse_real(j[0]), parse_real(j[1])};
}

const char* kind_name(MeasureSpec::Kind k) {
  switch (k) {
    case MeasureSpec::Kind::kLebesgue: return "lebesgue";
    case MeasureSpec::Kind::kAtomic: return "atomic";
    case MeasureSpec::Kind::kCantor: return "cantor";
    case MeasureSpec::Kind::kCdfTable: return "cdf_table";
    case MeasureSpec::Kind::kMixture: return "mixture";
  }
  return "";
}

}  // namespace

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw ConfigError("expected a number or a multiple of pi");
  std::string s = j.get<std::string>();
  const auto pos = s.find("pi");
  if (pos == std::string::npos || pos + 2 != s.size()) {
    throw ConfigError("cannot read '" + s + "' as a real");
  }
  s.erase(pos);
  if (!s.empty() && s.back() == '*') s.pop_back();
  double factor = 1.0;
  if (!s.empty()) {
    std::size_t used = 0;
    try {
      factor = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ConfigError("cannot read '" + j.get<std::string>() + "' as a real");
  }
  return factor * std::numbers::pi;
}

MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object()) bad("expected an object");
  if (!j.contains("kind")) bad("missing field 'kind'");
  if (!j.contains("domain")) bad("missing field 'domain'");
  MeasureSpec s;
  s.domain = read_interval(j.at("domain"));
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "lebesgue") {
    s.kind = MeasureSpec::Kind::kLebesgue;
    if (j.contains("scale")) s.scale = parse_real(j.at("scale"));
  } else if (kind == "atomic") {
    s.kind = MeasureSpec::Kind::kAtomic;
    if (!j.contains("atoms")) bad("atomic measure needs 'atoms'");
    for (const auto& a : j.at("atoms")) {
      if (a.is_array() && a.size() == 2) {
        s.atoms.push_back({parse_real(a[0]), parse_real(a[1])});
      } else if (a.is_object()) {
        s.atoms.push_back({parse_real(a.at("position")), parse_real(a.at("mass"))});
      } else {
        bad("atoms must be [position, mass] pairs");
      }
    }
  } else if (kind == "cantor") {
    s.kind = MeasureSpec::Kind::kCantor;
    if (!j.contains("levels")) bad("cantor measure needs 'levels'");
    s.levels = j.at("levels").get<int>();
    if (j.contains("total")) s.total = parse_real(j.at("total"));
  } else if (kind == "cdf_table") {
    s.kind = MeasureSpec::Kind::kCdfTable;
    if (!j.contains("table")) bad("cdf_table measure needs 'table'");
    for (const auto& row : j.at("table")) {
      if (!row.is_array() || row.size() != 2) bad("table rows must be [x, F] pairs");
      s.table.emplace_back(parse_real(row[0]), parse_real(row[1]));
    }
  } else if (kind == "mixture") {
    s.kind = MeasureSpec::Kind::kMixture;
    if (!j.contains("components")) bad("mixture needs 'components'");
    for (const auto& c : j.at("components")) {
      if (!c.contains("weight") || !c.contains("measure")) bad("components need 'weight' and 'measure'");
      s.components.push_back({parse_real(c.at("weight")), measure_spec_from_json(c.at("measure"))});
    }
  } else {
    bad("unknown kind '" + kind + "'");
  }
  return s;
}

json measure_spec_to_json(const MeasureSpec& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  j["domain"] = {s.domain.lo, s.domain.hi};
  switch (s.kind) {
    case MeasureSpec::Kind::kLebesgue:
      j["scale"] = s.scale;
      break;
    case MeasureSpec::Kind::kAtomic:
      j["atoms"] = json::array();
      for (const auto& a : s.atoms) j["atoms"].push_back({a.position, a.mass});
      break;
    case MeasureSpec::Kind::kCantor:
      j["levels"] = s.levels;
      j["total"] = s.total;
      break;
    case MeasureSpec::Kind::kCdfTable:
      j["table"] = json::array();
      for (const auto& [x, f] : s.table) j["table"].push_back({x, f});
      break;
    case MeasureSpec::Kind::kMixture:
      j["components"] = json::array();
      for (const auto& c : s.components) {
        j["components"].push_back({{"weight", c.weight}, {"measure", measure_spec_to_json(c.measure)}});
      }
      break;
  }
  return j;
}

MeasureSpec load_measure_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measure spec " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("measure spec " + path.string() + ": " + e.what());
  }
  return measure_spec_from_json(j);
}

}  // namespace menshov
