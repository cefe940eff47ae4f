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

#ifndef MENSHOV_MEASURE_HPP
#define MENSHOV_MEASURE_HPP

#include <memory>
#include <utility>
#include <vector>

#include "menshov/common.hpp"

namespace menshov {

/// Point mass.
struct Atom {
  double position = 0.0;
  double mass = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Declarative description of a finite positive Borel measure on a closed
/// interval. Only the fields relevant to `kind` are read.
struct MeasureSpec {
  enum class Kind { kLebesgue, kAtomic, kCantor, kCdfTable, kMixture };
  struct Component;

  Kind kind = Kind::kLebesgue;
  Interval domain{0.0, kTwoPi};
  double scale = 1.0;                           // lebesgue: density
  std::vector<Atom> atoms;                      // atomic
  int levels = 0;                               // cantor: construction depth
  double total = 1.0;                           // cantor: total mass
  std::vector<std::pair<double, double>> table; // cdf_table: (x, F) knots
  std::vector<Component> components;            // mixture

  static MeasureSpec lebesgue(Interval domain, double scale = 1.0);
  static MeasureSpec atomic(Interval domain, std::vector<Atom> atoms);
  static MeasureSpec cantor(Interval domain, int levels, double total = 1.0);
  static MeasureSpec cdf_table(Interval domain, std::vector<std::pair<double, double>> table);
  static MeasureSpec mixture(Interval domain, std::vector<Component> components);
};

struct MeasureSpec::Component {
  double weight = 1.0;
  MeasureSpec measure;
};

namespace detail {
struct MeasureData;
}

/// Finite positive Borel measure on a closed interval, stored through its
/// distribution function F(x) = mu([lo, x]). The continuous part is a sum of
/// pieces with piecewise-affine CDFs (uniform, finite-level Cantor,
/// tabulated); atoms are kept exactly.
///
/// A Measure is immutable and cheap to copy; normalized views share the
/// underlying data.
class Measure {
 public:
  const Interval& domain() const { return domain_; }
  double total_mass() const;

  /// F(x) = mu([lo, x]); 0 below the domain, total above it.
  double cdf(double x) const;
  /// F(x-) = mu([lo, x)).
  double cdf_left(double x) const;
  /// Distribution function of the continuous (atom-free) part.
  double continuous_cdf(double x) const;

  /// mu([a, b]) = F(b) - F(a-). Throws PreconditionError if [a, b] is not
  /// inside the domain.
  double interval_mass(double a, double b) const;
  double interval_mass(const Interval& iv) const { return interval_mass(iv.lo, iv.hi); }
  /// Integral over [a, b] of the continuous CDF, for a <= b in the domain.
  double continuous_cdf_integral(double a, double b) const;
  /// Continuous-part mass of [a, b].
  double continuous_mass(double a, double b) const;
  /// True when the continuous CDF is affine on [a, b] (constant counts).
  bool continuous_affine_on(double a, double b) const;

  /// Point masses inside the domain, sorted by position.
  std::vector<Atom> atoms() const;
  /// cdf(x) - cdf_left(x).
  double jump(double x) const { return cdf(x) - cdf_left(x); }

  /// True for views produced by normalize().
  bool is_normalized() const { return !identity_; }

 private:
  friend Measure build_measure(const MeasureSpec& spec);
  friend Measure normalize(const Measure& m, const Interval& window);

  Measure() = default;

  double to_base(double y) const;
  double from_base(double x) const;
  double base_cdf(double x) const;
  double base_cdf_left(double x) const;

  std::shared_ptr<const detail::MeasureData> data_;
  Interval domain_;
  bool identity_ = true;
  Interval window_;           // base coordinates of the domain
  double offset_ = 0.0;       // base F(window.lo-)
  double cont_offset_ = 0.0;  // base continuous F(window.lo)
  double norm_ = 1.0;         // base mass of the window
};

/// Validates `spec` and builds the measure. Throws PreconditionError on
/// non-monotone tables, non-positive masses and atoms outside the domain.
Measure build_measure(const MeasureSpec& spec);

/// Probability measure on [0, 1] with nu(E) = mu(l(E) ∩ I) / mu(I), where l
/// is the increasing affine map of [0, 1] onto I. Throws PreconditionError
/// when mu(I) = 0 or I leaves the domain.
Measure normalize(const Measure& m, const Interval& window);

/// Default atom detection threshold: 1e-9 of the total mass.
double default_jump_tolerance(const Measure& m);

/// Jumps of the CDF larger than `tolerance` (negative selects the default),
/// sorted by position.
std::vector<Atom> atomic_part(const Measure& m, double tolerance = -1.0);

/// True when the measure carries no atom above the jump tolerance.
bool is_non_atomic(const Measure& m, double tolerance = -1.0);

}  // namespace menshov

#endif  // MENSHOV_MEASURE_HPP
