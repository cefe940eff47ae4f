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

#ifndef MENSHOV_EQUIDISTRIBUTION_HPP
#define MENSHOV_EQUIDISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "menshov/fourier_stieltjes.hpp"
#include "menshov/measure.hpp"

namespace menshov {

/// A_n = union over k < n of [a + (k + sigma)(b - a)/n, a + (k + sigma + tau)(b - a)/n].
struct MSetSpec {
  Interval I;
  std::int64_t n = 1;
  double sigma = 0.0;
  double tau = 0.0;

  /// sigma > 0 and sigma + tau < 1, the hypothesis under which mu(A_n)
  /// converges to tau mu(I) along a density-one sequence.
  bool strict() const { return sigma > 0.0 && sigma + tau < 1.0; }
};

/// Arc {exp(2 pi i t) : t in [sigma, sigma + tau]} of the unit circle.
struct ArcSpec {
  double sigma = 0.0;
  double tau = 0.0;
};

/// The n closed intervals of A_n in increasing order. Accepts sigma >= 0,
/// tau > 0, sigma + tau <= 1 (boundary cases are flagged by strict());
/// throws PreconditionError otherwise.
std::vector<Interval> mset_intervals(const MSetSpec& spec);

/// mu(A_n) as a sum of closed-interval masses.
double mset_mass(const Measure& mu, const MSetSpec& spec);

/// P_n(arc) = nu(F_n^{-1}(arc)) for F_n(x) = exp(2 pi i n x), i.e. the mass
/// of B_n = {x : frac(n x) in [sigma, sigma + tau]} under a probability
/// measure on [0, 1].
double pushforward_arc_mass(const Measure& nu, std::int64_t n, const ArcSpec& arc);

struct ConvergenceRow {
  std::int64_t n = 0;
  double mass = 0.0;
  double error = 0.0;  // |mu(A_n) - tau mu(I)|
};

struct ConvergenceTable {
  Interval I;
  double sigma = 0.0;
  double tau = 0.0;
  double target = 0.0;  // tau mu(I)
  bool strict = true;
  std::vector<ConvergenceRow> rows;
  /// Largest error over the last quarter of the rows (at least one row).
  double tail_sup = 0.0;
  std::int64_t tail_start = 0;  // first n of the tail
};

/// mu(A_n) against tau mu(I) for every n in `lambda` (n = 0 is skipped).
/// Throws PreconditionError for an empty index set.
ConvergenceTable proposition_scan(const Measure& mu, const Interval& I, double sigma, double tau,
                                  const IndexSet& lambda, int workers = 1);

}  // namespace menshov

#endif  // MENSHOV_EQUIDISTRIBUTION_HPP
