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

#include "menshov/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "menshov/common.hpp"

namespace menshov {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

struct CsvWriter::Impl {
  std::ofstream out;
  bool first = true;
};

CsvWriter::CsvWriter(const std::filesystem::path& path, const nlohmann::json& config,
                     std::initializer_list<std::string> header)
    : impl_(std::make_unique<Impl>()) {
  impl_->out = open_out(path);
  impl_->out << "# config: " << config.dump() << '\n';
  bool first = true;
  for (const auto& h : header) {
    impl_->out << (first ? "" : ",") << h;
    first = false;
  }
  impl_->out << '\n';
}

CsvWriter::~CsvWriter() = default;

CsvWriter& CsvWriter::cell(double x) { return cell(format_real(x)); }
CsvWriter& CsvWriter::cell(long long x) { return cell(std::to_string(x)); }

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (!impl_->first) impl_->out << ',';
  impl_->out << s;
  impl_->first = false;
  return *this;
}

void CsvWriter::end_row() {
  impl_->out << '\n';
  impl_->first = true;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_index_list(const std::filesystem::path& path, const std::vector<long long>& values) {
  auto out = open_out(path);
  for (long long v : values) out << v << '\n';
}

void write_svg_line_plot(const std::filesystem::path& path, const std::vector<double>& x,
                         const std::vector<double>& y, const std::string& title,
                         const std::string& x_label, const std::string& y_label) {
  constexpr double kW = 640, kH = 400, kPad = 50;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << x_label << "</text>\n";
  out << "<text x=\"14\" y=\"" << kH / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << kH / 2
      << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad << "\" height=\""
      << kH - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!x.empty() && x.size() == y.size()) {
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const double ymax = std::max(*std::max_element(y.begin(), y.end()), 1e-300);
    const double xspan = std::max(*xmax - *xmin, 1e-300);
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double px = kPad + (x[i] - *xmin) / xspan * (kW - 2 * kPad);
      const double py = kH - kPad - std::max(y[i], 0.0) / ymax * (kH - 2 * kPad);
      out << format_real(px) << ',' << format_real(py) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kPad << "\" y=\"" << kPad - 5 << "\" font-size=\"10\">max " << format_real(ymax)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace menshov
