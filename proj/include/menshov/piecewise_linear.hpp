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

#ifndef MENSHOV_PIECEWISE_LINEAR_HPP
#define MENSHOV_PIECEWISE_LINEAR_HPP

#include <span>
#include <vector>

namespace menshov {

/// Continuous piecewise-linear function: linear between strictly increasing
/// breakpoints, zero outside [front, back]. Continuity across the support
/// ends requires zero end values; callers that need it check is_compactly_supported().
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn() = default;
  /// Throws PreconditionError unless breakpoints are strictly increasing and
  /// sizes match.
  PiecewiseLinearFn(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double x) const;

  std::span<const double> breakpoints() const { return x_; }
  std::span<const double> values() const { return v_; }
  bool empty() const { return x_.empty(); }

  /// max |value|, attained at a breakpoint.
  double sup_abs() const;
  bool is_compactly_supported() const;

 private:
  std::vector<double> x_;
  std::vector<double> v_;
};

/// sup over xi of |∫_{-inf}^{xi} f|, exact: the antiderivative is piecewise
/// quadratic, so candidates are the breakpoints and the zeros of f inside a
/// segment.
double running_integral_sup(const PiecewiseLinearFn& f);

/// ∫ f over the whole line.
double integral(const PiecewiseLinearFn& f);

/// Joins functions with disjoint supports (touching ends must both be zero).
PiecewiseLinearFn concatenate(std::span<const PiecewiseLinearFn> parts);

}  // namespace menshov

#endif  // MENSHOV_PIECEWISE_LINEAR_HPP
