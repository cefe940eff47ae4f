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

#include "menshov/corrector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "menshov/parallel.hpp"

namespace menshov {

bool CorrectorParams::admissible() const {
  return 4.0 * std::abs(gamma) * (d - c) / static_cast<double>(q()) < eps;
}

std::int64_t choose_r(double c, double d, double gamma, double eps, std::int64_t nu) {
  if (nu <= 8) throw PreconditionError("choose_r needs nu > 8");
  if (!(eps > 0.0)) throw PreconditionError("choose_r needs eps > 0");
  if (gamma == 0.0) return 1;
  const auto ok = [&](std::int64_t r) { return CorrectorParams{c, d, gamma, eps, nu, r}.admissible(); };
  const double estimate = 4.0 * std::abs(gamma) * (d - c) / (static_cast<double>(nu) * eps);
  if (!(estimate < 1e15)) throw PreconditionError("choose_r: eps too small for a representable r");
  std::int64_t r = std::max<std::int64_t>(1, static_cast<std::int64_t>(estimate));
  while (r > 1 && ok(r - 1)) --r;
  while (!ok(r)) ++r;
  return r;
}

double CorrectorLayout::lebesgue_E() const {
  double s = 0.0;
  for (const Interval& iv : E) s += iv.length();
  return s;
}

CorrectorLayout layout(const CorrectorParams& p) {
  if (p.nu <= 8) throw PreconditionError("corrector needs nu > 8");
  if (p.r < 1) throw PreconditionError("corrector needs r >= 1");
  if (!(p.eps > 0.0)) throw PreconditionError("corrector needs eps > 0");
  if (!(p.c < p.d) || p.c < 0.0 || p.d > kTwoPi) {
    throw PreconditionError("corrector needs c < d inside [0, 2 pi]");
  }
  if (!p.admissible()) {
    std::ostringstream msg;
    msg << "corrector parameters not admissible: 4|gamma|(d-c)/q = "
        << 4.0 * std::abs(p.gamma) * (p.d - p.c) / static_cast<double>(p.q()) << " >= eps = " << p.eps;
    throw PreconditionError(msg.str());
  }

  CorrectorLayout out;
  out.params = p;
  out.q = p.q();
  const Interval cd{p.c, p.d};
  const double q = static_cast<double>(out.q);
  out.delta = (p.d - p.c) / (q * static_cast<double>(p.nu));
  out.nodes.resize(static_cast<std::size_t>(out.q + 1));
  for (std::int64_t s = 0; s <= out.q; ++s) {
    out.nodes[static_cast<std::size_t>(s)] = affine_point(cd, static_cast<double>(s) / q);
  }
  const std::int64_t first = 2 * p.r + 1;
  const std::int64_t last = out.q - 2 * p.r;
  out.a_prime = out.nodes[static_cast<std::size_t>(2 * p.r)];
  out.b_prime = out.nodes[static_cast<std::size_t>(last)];
  out.removed.reserve(static_cast<std::size_t>(last - first + 1));
  out.E.reserve(static_cast<std::size_t>(last - first + 2));
  for (std::int64_t s = first; s <= last; ++s) {
    const double cs = out.nodes[static_cast<std::size_t>(s)];
    out.removed.push_back({out.a(s), cs});
    out.E.push_back({out.nodes[static_cast<std::size_t>(s - 1)], out.a(s)});
  }
  out.E.push_back({out.b_prime, out.b_prime});
  return out;
}

double dip_height(double gamma, std::int64_t nu) { return -gamma * static_cast<double>(2 * nu - 1); }

PiecewiseLinearFn build_psi(const CorrectorLayout& lay) {
  const double g = lay.params.gamma;
  const double h = dip_height(g, lay.params.nu);
  std::vector<double> xs, vs;
  const std::size_t n = 3 * lay.removed.size() + 6;
  xs.reserve(n);
  vs.reserve(n);
  auto push = [&](double x, double v) {
    xs.push_back(x);
    vs.push_back(v);
  };
  push(lay.params.c, 0.0);
  push(lay.a_prime - lay.delta, 0.0);
  push(lay.a_prime, g);
  for (const Interval& dip : lay.removed) {
    push(dip.lo, g);
    push(0.5 * (dip.lo + dip.hi), h);
    push(dip.hi, g);  // the last dip ends at b'
  }
  push(lay.b_prime + lay.delta, 0.0);
  push(lay.params.d, 0.0);
  return {std::move(xs), std::move(vs)};
}

namespace {

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kRelTol = 1e-6;
constexpr int kMaxDepth = 40;

// sin(j u) / u with its limit j at u = 0.
double dirichlet_kernel(double j, double u) {
  const double ju = j * u;
  if (std::abs(ju) < 1e-6) return j * (1.0 - ju * ju / 6.0);
  return std::sin(ju) / u;
}

struct Segment {
  double x0, v0, slope;
  double operator()(double t) const { return v0 + slope * (t - x0); }
};

double adaptive(const Segment& seg, double j, double x, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto f = [&](double t) { return seg(t) * dirichlet_kernel(j, t - x); };
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  resabs *= half;
  if (std::abs(kronrod - gauss) <= kRelTol * resabs || resabs == 0.0) return kronrod;
  if (depth >= kMaxDepth) {
    std::ostringstream msg;
    msg << "kernel quadrature did not converge on [" << lo << ", " << hi << "] for j=" << j << ", x=" << x;
    throw NumericError(msg.str());
  }
  return adaptive(seg, j, x, lo, center, depth + 1) + adaptive(seg, j, x, center, hi, depth + 1);
}

}  // namespace

double kernel_integral(const PiecewiseLinearFn& psi, std::int64_t j, double x) {
  if (j < 1) throw PreconditionError("kernel_integral needs j >= 1");
  const auto xs = psi.breakpoints();
  const auto vs = psi.values();
  const double jj = static_cast<double>(j);
  const double max_cell = (2.0 * std::numbers::pi / jj) / 8.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (vs[i] == 0.0 && vs[i + 1] == 0.0) continue;
    const double len = xs[i + 1] - xs[i];
    const Segment seg{xs[i], vs[i], (vs[i + 1] - vs[i]) / len};
    const auto cells = static_cast<std::int64_t>(std::ceil(len / max_cell));
    const Interval span{xs[i], xs[i + 1]};
    double prev = xs[i];
    for (std::int64_t c = 1; c <= cells; ++c) {
      const double next = affine_point(span, static_cast<double>(c) / static_cast<double>(cells));
      total += adaptive(seg, jj, x, prev, next, 0);
      prev = next;
    }
  }
  return total;
}

KernelSweep kernel_sup(const PiecewiseLinearFn& psi, std::int64_t nu, double gamma, std::int64_t j_max,
                       std::int64_t x_grid, int workers) {
  if (j_max < 1 || x_grid < 1) throw PreconditionError("kernel_sup needs j_max >= 1 and x_grid >= 1");
  const double scale = static_cast<double>(nu) * std::abs(gamma);
  KernelSweep out;
  out.rows.resize(static_cast<std::size_t>(j_max * x_grid));
  const Interval circle{0.0, kTwoPi};
  parallel_for(out.rows.size(), workers, [&](std::size_t idx) {
    const auto j = static_cast<std::int64_t>(idx) / x_grid + 1;
    const auto i = static_cast<std::int64_t>(idx) % x_grid;
    const double x = x_grid == 1 ? 0.0 : affine_point(circle, static_cast<double>(i) / static_cast<double>(x_grid - 1));
    const double value = kernel_integral(psi, j, x);
    out.rows[idx] = {j, x, value, scale > 0.0 ? std::abs(value) / scale : 0.0};
  });
  for (const auto& row : out.rows) {
    if (std::abs(row.integral) > out.sup) {
      out.sup = std::abs(row.integral);
      out.argmax_j = row.j;
      out.argmax_x = row.x;
    }
  }
  out.b_hat = scale > 0.0 ? out.sup / scale : 0.0;
  return out;
}

}  // namespace menshov
