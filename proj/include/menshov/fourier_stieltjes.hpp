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

#ifndef MENSHOV_FOURIER_STIELTJES_HPP
#define MENSHOV_FOURIER_STIELTJES_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "menshov/measure.hpp"

namespace menshov {

/// Approximate Fourier-Stieltjes coefficient with a rigorous bound on the
/// quadrature error of the continuous part.
struct Coefficient {
  std::complex<double> value;
  double error = 0.0;
};

inline constexpr int kDefaultRefinement = 256;

/// nu^(j) = ∫ exp(-2 pi i j t) dnu(t) for a probability measure on [0, 1].
///
/// Atoms are summed exactly. The continuous part is integrated on the
/// uniform partition of [0, 1] into refinement * max(1, |j|) cells: cells on
/// which the CDF is affine are integrated in closed form, zero-mass cells are
/// skipped, and every remaining cell is a midpoint Riemann-Stieltjes term
/// whose error is bounded by 2 pi |j| h times the cell's mass.
///
/// Throws PreconditionError if nu is not a probability measure on [0, 1] and
/// NumericError if the bound exceeds 0.5.
Coefficient coefficient(const Measure& nu, std::int64_t j, int refinement = kDefaultRefinement);

/// Cache of coefficients at a set of frequencies. Filled once, read-only
/// afterwards.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(const Measure& nu, std::span<const std::int64_t> frequencies,
                   int refinement = kDefaultRefinement, int workers = 1);

  bool contains(std::int64_t j) const { return entries_.contains(j); }
  /// Throws std::out_of_range for frequencies that were not computed.
  const Coefficient& at(std::int64_t j) const { return entries_.at(j); }
  const std::map<std::int64_t, Coefficient>& entries() const { return entries_; }
  int refinement() const { return refinement_; }

 private:
  std::map<std::int64_t, Coefficient> entries_;
  int refinement_ = kDefaultRefinement;
};

/// Cesaro average (1/(N+1)) sum_{n=0..N} |nu^(nk)|^2.
double wiener_average(const Measure& nu, std::int64_t k, std::int64_t N,
                      int refinement = kDefaultRefinement, int workers = 1);
/// Same average read from a table holding every nk, n <= N.
double wiener_average(const CoefficientTable& table, std::int64_t k, std::int64_t N);

/// Density of one Lambda_{j,k} at the horizon.
struct ThresholdDensity {
  std::int64_t j = 0;
  std::int64_t k = 0;
  double density = 0.0;
};

/// Certified subset of {0, ..., horizon}.
struct IndexSet {
  std::vector<std::int64_t> members;  // sorted
  std::int64_t horizon = 0;
  double density = 0.0;  // |members| / (horizon + 1)
  std::int64_t modulus = 1;
  std::vector<ThresholdDensity> provenance;
  std::vector<std::string> warnings;

  bool contains(std::int64_t n) const;
};

/// Lambda_{j,k} = { n <= N_max : |nu^(nk)| + error <= 1/j }.
IndexSet lambda_jk(const Measure& nu, std::int64_t j, std::int64_t k, std::int64_t N_max,
                   int refinement = kDefaultRefinement, int workers = 1);
IndexSet lambda_jk(const CoefficientTable& table, std::int64_t j, std::int64_t k, std::int64_t N_max);

struct LambdaParams {
  std::int64_t K = 3;
  std::int64_t J = 3;
  std::int64_t N_max = 2000;
  std::int64_t m = 1;
  int refinement = kDefaultRefinement;
  int workers = 1;
  /// Warn when |members| * m / (N_max + 1) falls below this.
  double density_floor = 0.5;
};

/// Finite-horizon density-one set: the intersection of Lambda_{j,k} over
/// j <= J, 1 <= |k| <= K, restricted to positive multiples of m. Negative k
/// share their set with -k since |nu^(-f)| = |nu^(f)| for a real measure.
/// Throws PreconditionError when nu has atoms above the jump tolerance.
IndexSet build_lambda(const Measure& nu, const LambdaParams& params);

}  // namespace menshov

#endif  // MENSHOV_FOURIER_STIELTJES_HPP
