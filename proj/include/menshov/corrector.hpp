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

#ifndef MENSHOV_CORRECTOR_HPP
#define MENSHOV_CORRECTOR_HPP

#include <cstdint>
#include <vector>

#include "menshov/common.hpp"
#include "menshov/piecewise_linear.hpp"

namespace menshov {

/// Inputs of the corrector construction on [c, d] ⊆ [0, 2 pi].
struct CorrectorParams {
  double c = 0.0;
  double d = 1.0;
  double gamma = 1.0;
  double eps = 0.1;
  std::int64_t nu = 9;  // > 8
  std::int64_t r = 1;

  std::int64_t q() const { return r * nu; }
  /// 4 |gamma| (d - c) / q < eps.
  bool admissible() const;
};

/// Smallest r >= 1 with 4 |gamma| (d - c) / (r nu) < eps; 1 when gamma = 0.
std::int64_t choose_r(double c, double d, double gamma, double eps, std::int64_t nu);

/// Node grid c_s = c + delta nu s (s = 0..q) with delta = (d - c) / (q nu),
/// the dips [a_s, c_s] = [c_s - delta, c_s] for s = 2r+1 .. q-2r, and the set
/// E = [a', b'] minus the dips, a' = c_{2r}, b' = c_{q-2r}.
struct CorrectorLayout {
  CorrectorParams params;
  std::int64_t q = 0;
  double delta = 0.0;
  std::vector<double> nodes;     // c_0 .. c_q
  double a_prime = 0.0;
  double b_prime = 0.0;
  std::vector<Interval> removed; // (nu - 4) r dips
  std::vector<Interval> E;       // (nu - 4) r intervals plus the point {b'}

  double a(std::int64_t s) const { return nodes[static_cast<std::size_t>(s)] - delta; }
  /// Lebesgue measure of E.
  double lebesgue_E() const;
};

/// Throws PreconditionError for nu <= 8, r < 1, eps <= 0, [c, d] outside
/// [0, 2 pi] or params that are not admissible.
CorrectorLayout layout(const CorrectorParams& params);

/// The corrector psi: gamma on E, a symmetric triangular dip to
/// -gamma (2 nu - 1) on each removed interval, single-delta ramps from 0 at
/// a' - delta up to gamma at a' and from gamma at b' down to 0 at b' + delta,
/// zero elsewhere. Each period [c_{s-1}, c_s] with a dip integrates to zero.
PiecewiseLinearFn build_psi(const CorrectorLayout& layout);

/// Dip height -gamma (2 nu - 1).
double dip_height(double gamma, std::int64_t nu);

/// ∫ psi(t) sin(j (t - x)) / (t - x) dt by adaptive Gauss-Kronrod on cells of
/// at most 1/8 kernel period inside each linear piece. Throws NumericError if
/// a cell fails to reach relative tolerance 1e-6.
double kernel_integral(const PiecewiseLinearFn& psi, std::int64_t j, double x);

struct KernelRow {
  std::int64_t j = 0;
  double x = 0.0;
  double integral = 0.0;
  double bound_ratio = 0.0;  // |integral| / (nu |gamma|)
};

struct KernelSweep {
  double sup = 0.0;
  double b_hat = 0.0;  // sup / (nu |gamma|); 0 when gamma = 0
  std::int64_t argmax_j = 0;
  double argmax_x = 0.0;
  std::vector<KernelRow> rows;  // j-major
};

/// Sweep of |kernel_integral| over j = 1..j_max and x_grid uniform points of
/// [0, 2 pi] (both ends included).
KernelSweep kernel_sup(const PiecewiseLinearFn& psi, std::int64_t nu, double gamma, std::int64_t j_max,
                       std::int64_t x_grid, int workers = 1);

}  // namespace menshov

#endif  // MENSHOV_CORRECTOR_HPP
