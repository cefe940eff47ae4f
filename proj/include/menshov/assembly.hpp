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

#ifndef MENSHOV_ASSEMBLY_HPP
#define MENSHOV_ASSEMBLY_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "menshov/corrector.hpp"
#include "menshov/fourier_stieltjes.hpp"
#include "menshov/measure.hpp"
#include "menshov/piecewise_linear.hpp"

namespace menshov {

/// Right-continuous step function on [0, 2 pi]: values[i] on
/// [breakpoints[i], breakpoints[i + 1]).
struct StepFunction {
  std::vector<double> breakpoints;  // 0 = b_0 < ... < b_m = 2 pi
  std::vector<double> values;       // m values

  /// Throws PreconditionError on malformed input.
  void validate() const;
  std::size_t cells() const { return values.size(); }
  bool equal_cells(double tol = 1e-12) const;
  double operator()(double x) const;

  /// rho equal cells on [0, 2 pi] with the given values.
  static StepFunction uniform(std::vector<double> values);
};

/// Where resampling moved a value change.
struct BoundaryShift {
  double from = 0.0;
  double to = 0.0;
};

struct SubdivideResult {
  StepFunction phi;
  std::int64_t rho = 0;  // equal cells before subdividing
  std::vector<BoundaryShift> shifts;
};

/// Coarsest equal-cell grid (at most `cap` cells) whose boundaries contain
/// every breakpoint; if none exists the cap grid is used and a cell holding a
/// value change takes the value at its left end.
SubdivideResult resample_equal(const StepFunction& phi, std::int64_t cap = 4096);

/// Splits each of the rho equal cells into kappa equal cells; unequal input
/// is resampled first and the shifts are reported.
SubdivideResult subdivide(const StepFunction& phi, std::int64_t kappa, std::int64_t resample_cap = 4096);

/// Per-cell tolerance sequence eps_k for the running-integral property.
struct EpsilonSchedule {
  enum class Kind { kUniform, kGeometric, kExplicit };
  Kind kind = Kind::kUniform;
  double eps0 = 1.0;
  std::vector<double> values;  // explicit, cycled if shorter than the cell count

  /// uniform: eps0 / cells; geometric: eps0 2^-(k+1); explicit: values[k mod size].
  double at(std::size_t k, std::size_t cells) const;
};

struct ClaimOptions {
  std::int64_t nu = 16;
  EpsilonSchedule eps;
  std::int64_t kappa_cap = 512;
  std::int64_t r_cap = 512;
  /// When the doubling search over kappa fails, walk the density-one set of
  /// the normalized measure (multiples of rho) up to rho * kappa_cap.
  bool lambda_walk = true;
  std::int64_t lambda_K = 3;
  std::int64_t lambda_J = 3;
  int refinement = kDefaultRefinement;
  std::int64_t resample_cap = 4096;
  int workers = 1;
};

struct CellResult {
  Interval J;
  double gamma = 0.0;
  double eps = 0.0;
  std::int64_t r = 0;
  std::int64_t r_min = 0;
  CorrectorLayout layout;
  PiecewiseLinearFn psi;
  double mu_J = 0.0;
  double mu_core = 0.0;  // mu([a', b'])
  double mu_E = 0.0;
  bool target_met = false;  // mu(E_k) >= (1 - 2/nu) mu([a', b'])
  double running_sup = 0.0;
  bool sup_bound_ok = false;      // |psi| <= 2 nu |gamma|
  bool equals_gamma_on_E = false; // psi = gamma on sampled points of E
  bool running_integral_ok = false;
};

struct UnionScanRow {
  std::int64_t kappa = 0;
  double mass = 0.0;
  double ratio = 0.0;  // mass / mu([0, 2 pi])
};

struct ClaimResult {
  std::int64_t nu = 0;
  std::int64_t rho = 0;
  std::int64_t kappa = 0;
  std::string kappa_source;  // "doubling", "lambda" or "best-effort"
  std::vector<UnionScanRow> union_scan;
  double union_mass = 0.0;
  bool union_target_met = false;  // >= (1 - 5/nu) mu([0, 2 pi])
  double lambda_density = -1.0;   // -1 when the lambda walk did not run
  std::vector<BoundaryShift> shifts;
  std::vector<CellResult> cells;
  std::vector<Interval> E;
  double mu_E = 0.0;
  double mu_total = 0.0;
  bool certified = false;  // mu(E) >= (1 - 7/nu) mu([0, 2 pi])
  std::vector<std::string> diagnostics;

  bool all_cell_properties() const;
};

/// One round of the correction: partition into rho * kappa equal cells, a
/// corrector per cell, and the exceptional-set bound. Throws
/// PreconditionError for nu <= 8, a measure not on [0, 2 pi] or with atoms.
/// Search budget exhaustion returns certified = false.
ClaimResult claim_run(const StepFunction& phi, const Measure& mu, const ClaimOptions& options);

struct DemoOptions {
  double eps = 0.1;           // bound on the exceptional mass
  double uniform_gap = 0.1;   // sup |f - phi|
  double eps0 = 1.0;          // running-integral budget per round
  std::int64_t max_rho = 4096;
  int samples_per_cell = 64;
  std::int64_t kappa_cap = 512;
  std::int64_t r_cap = 512;
  int workers = 1;
};

struct DemoResult {
  StepFunction phi;
  std::int64_t nu = 0;
  ClaimResult claim;
  PiecewiseLinearFn g;
  double exceptional_mass = 0.0;  // mu({phi != g})
  double eps = 0.0;
  double sup_f_minus_phi = 0.0;   // sampled
  double sup_f_minus_g_on_E = 0.0;
};

/// Step approximation of f, one certified correction round and the
/// continuous g = sum_k psi_k, which equals phi on E and vanishes at 0 and
/// 2 pi. Throws CertificationError when the round is not certified.
DemoResult theorem_demo(const std::function<double(double)>& f, const Measure& mu, const DemoOptions& options);

/// Smallest nu > 8 with 7 total / nu < eps.
std::int64_t choose_nu(double total, double eps);

/// (1/2pi) ∫_0^{2pi} g(t) exp(-i n t) dt for n = 0..N, exact per linear piece.
std::vector<std::complex<double>> fourier_coefficients(const PiecewiseLinearFn& g, std::int64_t N);

struct PartialSumRow {
  std::int64_t N = 0;
  double sup_error = 0.0;
};

struct PartialSumTable {
  std::vector<PartialSumRow> rows;
  /// Fraction of consecutive rows whose error did not increase.
  double monotone_fraction = 1.0;
};

/// sup over grid points 2 pi i / grid of |S_N g - g| for each N.
PartialSumTable partial_sum_diagnostics(const PiecewiseLinearFn& g, std::vector<std::int64_t> N_list,
                                        std::int64_t grid);

}  // namespace menshov

#endif  // MENSHOV_ASSEMBLY_HPP
