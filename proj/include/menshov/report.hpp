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

#ifndef MENSHOV_REPORT_HPP
#define MENSHOV_REPORT_HPP

#include <filesystem>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace menshov {

/// Fixed 17-significant-digit rendering, so reruns are byte-identical.
std::string format_real(double x);

/// Comma-separated file with a `# config: {...}` line ahead of the header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const nlohmann::json& config,
            std::initializer_list<std::string> header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(const std::string& s);
  void end_row();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Pretty-printed JSON document with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// One-column text file of integers.
void write_index_list(const std::filesystem::path& path, const std::vector<long long>& values);

/// Minimal SVG line chart of y against x.
void write_svg_line_plot(const std::filesystem::path& path, const std::vector<double>& x,
                         const std::vector<double>& y, const std::string& title,
                         const std::string& x_label, const std::string& y_label);

}  // namespace menshov

#endif  // MENSHOV_REPORT_HPP
