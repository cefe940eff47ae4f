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

#ifndef MENSHOV_COMMON_HPP
#define MENSHOV_COMMON_HPP

#include <numbers>
#include <stdexcept>
#include <string>

namespace menshov {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Point of `iv` at relative position t, pinned to the exact endpoints at
/// t = 0 and t = 1 so that grids built on `iv` start and end on it.
inline double affine_point(const Interval& iv, double t) {
  if (t <= 0.0) return iv.lo;
  if (t >= 1.0) return iv.hi;
  return iv.lo + (iv.hi - iv.lo) * t;
}

/// Input violates an operation's precondition (bad spec, bad parameters,
/// atomic measure where a non-atomic one is required, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed configuration or spec document (missing fields, bad JSON).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructive search ran out of budget before reaching its target.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature did not reach its tolerance or an error bound is unusable.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace menshov

#endif  // MENSHOV_COMMON_HPP
