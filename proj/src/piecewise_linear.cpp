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

#include "menshov/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>

#include "menshov/common.hpp"

namespace menshov {

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> breakpoints, std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
  if (x_.size() != v_.size()) throw PreconditionError("breakpoints and values differ in length");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i - 1] < x_[i])) throw PreconditionError("breakpoints must be strictly increasing");
  }
}

double PiecewiseLinearFn::operator()(double x) const {
  if (x_.empty() || x < x_.front() || x > x_.back()) return 0.0;
  const auto it = std::lower_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(it - x_.begin());
  if (x_[i] == x) return v_[i];
  const double x0 = x_[i - 1], x1 = x_[i];
  const double v0 = v_[i - 1], v1 = v_[i];
  if (v0 == v1) return v0;
  return v0 + (v1 - v0) * ((x - x0) / (x1 - x0));
}

double PiecewiseLinearFn::sup_abs() const {
  double s = 0.0;
  for (double v : v_) s = std::max(s, std::abs(v));
  return s;
}

bool PiecewiseLinearFn::is_compactly_supported() const {
  return x_.empty() || (v_.front() == 0.0 && v_.back() == 0.0);
}

double running_integral_sup(const PiecewiseLinearFn& f) {
  const auto x = f.breakpoints();
  const auto v = f.values();
  double acc = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    const double v0 = v[i], v1 = v[i + 1];
    if ((v0 > 0.0 && v1 < 0.0) || (v0 < 0.0 && v1 > 0.0)) {
      // f vanishes at s* = v0 / (v0 - v1) of the way along the segment.
      const double s = v0 / (v0 - v1);
      const double extremum = acc + 0.5 * h * s * v0;
      sup = std::max(sup, std::abs(extremum));
    }
    acc += 0.5 * h * (v0 + v1);
    sup = std::max(sup, std::abs(acc));
  }
  return sup;
}

double integral(const PiecewiseLinearFn& f) {
  const auto x = f.breakpoints();
  const auto v = f.values();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) acc += 0.5 * (x[i + 1] - x[i]) * (v[i] + v[i + 1]);
  return acc;
}

PiecewiseLinearFn concatenate(std::span<const PiecewiseLinearFn> parts) {
  std::vector<double> xs, vs;
  for (const auto& p : parts) {
    const auto x = p.breakpoints();
    const auto v = p.values();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!xs.empty() && x[i] <= xs.back()) {
        if (x[i] == xs.back() && v[i] == 0.0 && vs.back() == 0.0) continue;
        throw PreconditionError("concatenate: supports overlap");
      }
      xs.push_back(x[i]);
      vs.push_back(v[i]);
    }
  }
  return {std::move(xs), std::move(vs)};
}

}  // namespace menshov
