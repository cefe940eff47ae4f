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

#include "menshov/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "menshov/equidistribution.hpp"
#include "menshov/parallel.hpp"

namespace menshov {

namespace {

const Interval kCircle{0.0, kTwoPi};

double cell_point(std::int64_t k, std::int64_t n) {
  return affine_point(kCircle, static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace

void StepFunction::validate() const {
  if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size()) {
    throw PreconditionError("step function needs m + 1 breakpoints for m values");
  }
  if (breakpoints.front() != 0.0 || std::abs(breakpoints.back() - kTwoPi) > 1e-12) {
    throw PreconditionError("step function breakpoints must run from 0 to 2 pi");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw PreconditionError("step function breakpoints must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw PreconditionError("step function values must be finite");
  }
}

bool StepFunction::equal_cells(double tol) const {
  const auto m = static_cast<std::int64_t>(cells());
  for (std::int64_t k = 0; k <= m; ++k) {
    if (std::abs(breakpoints[static_cast<std::size_t>(k)] - cell_point(k, m)) > tol) return false;
  }
  return true;
}

double StepFunction::operator()(double x) const {
  if (x >= breakpoints.back()) return values.back();
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  if (it == breakpoints.begin()) return values.front();
  return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

StepFunction StepFunction::uniform(std::vector<double> values) {
  StepFunction s;
  const auto m = static_cast<std::int64_t>(values.size());
  for (std::int64_t k = 0; k <= m; ++k) s.breakpoints.push_back(cell_point(k, m));
  s.values = std::move(values);
  return s;
}

SubdivideResult resample_equal(const StepFunction& phi, std::int64_t cap) {
  phi.validate();
  if (cap < 1) throw PreconditionError("resample cap must be positive");
  SubdivideResult out;
  if (phi.equal_cells()) {
    out.phi = phi;
    out.rho = static_cast<std::int64_t>(phi.cells());
    return out;
  }
  constexpr double kAlign = 1e-9;
  std::int64_t rho = cap;
  for (std::int64_t candidate = 1; candidate <= cap; ++candidate) {
    bool aligned = true;
    for (std::size_t i = 1; i + 1 < phi.breakpoints.size() && aligned; ++i) {
      const double t = phi.breakpoints[i] / kTwoPi * static_cast<double>(candidate);
      aligned = std::abs(t - std::nearbyint(t)) <= kAlign;
    }
    if (aligned) {
      rho = candidate;
      break;
    }
  }
  std::vector<double> values(static_cast<std::size_t>(rho));
  const double h = kTwoPi / static_cast<double>(rho);
  for (std::int64_t k = 0; k < rho; ++k) {
    // Value at the cell's left end, nudged so aligned breakpoints count as reached.
    values[static_cast<std::size_t>(k)] = phi(cell_point(k, rho) + kAlign * h);
  }
  for (std::size_t i = 1; i + 1 < phi.breakpoints.size(); ++i) {
    const double b = phi.breakpoints[i];
    const double t = b / h;
    if (std::abs(t - std::nearbyint(t)) > kAlign) {
      out.shifts.push_back({b, cell_point(static_cast<std::int64_t>(std::ceil(t)), rho)});
    }
  }
  out.phi = StepFunction::uniform(std::move(values));
  out.rho = rho;
  return out;
}

SubdivideResult subdivide(const StepFunction& phi, std::int64_t kappa, std::int64_t resample_cap) {
  if (kappa < 1) throw PreconditionError("subdivide needs kappa >= 1");
  SubdivideResult base = resample_equal(phi, resample_cap);
  std::vector<double> values;
  values.reserve(base.phi.values.size() * static_cast<std::size_t>(kappa));
  for (double v : base.phi.values) values.insert(values.end(), static_cast<std::size_t>(kappa), v);
  base.phi = StepFunction::uniform(std::move(values));
  return base;
}

double EpsilonSchedule::at(std::size_t k, std::size_t cells) const {
  switch (kind) {
    case Kind::kUniform:
      return eps0 / static_cast<double>(std::max<std::size_t>(cells, 1));
    case Kind::kGeometric:
      return std::ldexp(eps0, -static_cast<int>(std::min<std::size_t>(k + 1, 1000)));
    case Kind::kExplicit:
      if (values.empty()) throw PreconditionError("explicit epsilon schedule is empty");
      return values[k % values.size()];
  }
  return eps0;
}

bool ClaimResult::all_cell_properties() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) {
    return c.sup_bound_ok && c.equals_gamma_on_E && c.running_integral_ok;
  });
}

namespace {

double mass_of(const Measure& mu, const std::vector<Interval>& ivs) {
  double s = 0.0;
  for (const Interval& iv : ivs) s += mu.interval_mass(iv);
  return s;
}

bool psi_equals_gamma_on_E(const PiecewiseLinearFn& psi, const CorrectorLayout& lay) {
  const double g = lay.params.gamma;
  for (const Interval& iv : lay.E) {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      if (psi(affine_point(iv, t)) != g) return false;
    }
  }
  return true;
}

CellResult build_cell(const Measure& mu, const Interval& J, double gamma, double eps, const ClaimOptions& o) {
  CellResult cell;
  cell.J = J;
  cell.gamma = gamma;
  cell.eps = eps;
  cell.mu_J = mu.interval_mass(J);
  cell.r_min = choose_r(J.lo, J.hi, gamma, eps, o.nu);
  const double keep = 1.0 - 2.0 / static_cast<double>(o.nu);
  const std::int64_t r_limit = std::max(o.r_cap, cell.r_min);

  double best_ratio = -1.0;
  for (std::int64_t r = cell.r_min; r <= r_limit; r *= 2) {
    CorrectorLayout lay = layout({J.lo, J.hi, gamma, eps, o.nu, r});
    if (r == cell.r_min) cell.mu_core = mu.interval_mass(lay.a_prime, lay.b_prime);
    const double mu_E = mass_of(mu, lay.E);
    const bool met = mu_E >= keep * cell.mu_core;
    const double ratio = cell.mu_core > 0.0 ? mu_E / cell.mu_core : 1.0;
    if (met || ratio > best_ratio) {
      best_ratio = ratio;
      cell.r = r;
      cell.mu_E = mu_E;
      cell.target_met = met;
      cell.layout = std::move(lay);
    }
    if (met || cell.mu_core == 0.0) break;
    if (r > r_limit / 2) break;
  }

  cell.psi = build_psi(cell.layout);
  cell.sup_bound_ok = cell.psi.sup_abs() <= 2.0 * static_cast<double>(o.nu) * std::abs(gamma);
  cell.equals_gamma_on_E = psi_equals_gamma_on_E(cell.psi, cell.layout);
  cell.running_sup = running_integral_sup(cell.psi);
  cell.running_integral_ok = cell.running_sup < eps;
  return cell;
}

}  // namespace

ClaimResult claim_run(const StepFunction& phi, const Measure& mu, const ClaimOptions& o) {
  if (o.nu <= 8) throw PreconditionError("claim_run needs nu > 8");
  if (o.kappa_cap < 1 || o.r_cap < 1) throw PreconditionError("claim_run needs positive search caps");
  const Interval& dom = mu.domain();
  if (std::abs(dom.lo) > 1e-12 || std::abs(dom.hi - kTwoPi) > 1e-12) {
    throw PreconditionError("claim_run needs a measure on [0, 2 pi]");
  }
  if (!is_non_atomic(mu)) throw PreconditionError("claim_run needs a non-atomic measure");

  const SubdivideResult base = resample_equal(phi, o.resample_cap);
  const double nu = static_cast<double>(o.nu);

  ClaimResult out;
  out.nu = o.nu;
  out.rho = base.rho;
  out.shifts = base.shifts;
  out.mu_total = mu.total_mass();
  const double union_target = (1.0 - 5.0 / nu) * out.mu_total;

  auto union_mass = [&](std::int64_t kappa) {
    return mset_mass(mu, {kCircle, base.rho * kappa, 2.0 / nu, 1.0 - 4.0 / nu});
  };
  auto try_kappa = [&](std::int64_t kappa) {
    const double m = union_mass(kappa);
    out.union_scan.push_back({kappa, m, out.mu_total > 0.0 ? m / out.mu_total : 1.0});
    return m >= union_target;
  };

  std::int64_t chosen = 0;
  for (std::int64_t kappa = 1; kappa <= o.kappa_cap; kappa *= 2) {
    if (try_kappa(kappa)) {
      chosen = kappa;
      out.kappa_source = "doubling";
      break;
    }
  }
  if (chosen == 0 && o.lambda_walk) {
    LambdaParams lp;
    lp.K = o.lambda_K;
    lp.J = o.lambda_J;
    lp.m = base.rho;
    lp.N_max = base.rho * o.kappa_cap;
    lp.refinement = o.refinement;
    lp.workers = o.workers;
    const IndexSet lambda = build_lambda(normalize(mu, kCircle), lp);
    out.lambda_density = lambda.density;
    for (const auto& w : lambda.warnings) out.diagnostics.push_back("lambda: " + w);
    for (std::int64_t n : lambda.members) {
      const std::int64_t kappa = n / base.rho;
      if ((kappa & (kappa - 1)) == 0) continue;  // powers of two were tried already
      if (try_kappa(kappa)) {
        chosen = kappa;
        out.kappa_source = "lambda";
        break;
      }
    }
  }
  if (chosen == 0) {
    const auto best = std::max_element(out.union_scan.begin(), out.union_scan.end(),
                                       [](const auto& a, const auto& b) { return a.mass < b.mass; });
    chosen = best->kappa;
    out.kappa_source = "best-effort";
    out.diagnostics.push_back("kappa search exhausted before mu(union) >= (1 - 5/nu) mu([0, 2 pi])");
  }
  out.kappa = chosen;
  out.union_mass = union_mass(chosen);
  out.union_target_met = out.union_mass >= union_target;

  const std::int64_t n = base.rho * chosen;
  out.cells.resize(static_cast<std::size_t>(n));
  parallel_for(out.cells.size(), o.workers, [&](std::size_t k) {
    const auto kk = static_cast<std::int64_t>(k);
    const Interval J{cell_point(kk, n), cell_point(kk + 1, n)};
    const double gamma = base.phi.values[k / static_cast<std::size_t>(chosen)];
    out.cells[k] = build_cell(mu, J, gamma, o.eps.at(k, out.cells.size()), o);
  });

  std::size_t missed = 0;
  for (const CellResult& c : out.cells) {
    out.E.insert(out.E.end(), c.layout.E.begin(), c.layout.E.end());
    out.mu_E += c.mu_E;
    if (!c.target_met) ++missed;
  }
  if (missed > 0) {
    std::ostringstream msg;
    msg << missed << " cell(s) below mu(E_k) >= (1 - 2/nu) mu([a', b']) within r <= " << o.r_cap;
    out.diagnostics.push_back(msg.str());
  }
  out.certified = out.mu_E >= (1.0 - 7.0 / nu) * out.mu_total;
  return out;
}

std::int64_t choose_nu(double total, double eps) {
  if (!(eps > 0.0) || !(total > 0.0)) throw PreconditionError("choose_nu needs positive total and eps");
  std::int64_t nu = std::max<std::int64_t>(9, static_cast<std::int64_t>(std::floor(7.0 * total / eps)));
  while (nu > 9 && 7.0 * total / static_cast<double>(nu - 1) < eps) --nu;
  while (!(7.0 * total / static_cast<double>(nu) < eps)) ++nu;
  return nu;
}

DemoResult theorem_demo(const std::function<double(double)>& f, const Measure& mu, const DemoOptions& o) {
  if (!(o.eps > 0.0) || !(o.uniform_gap > 0.0)) {
    throw PreconditionError("theorem_demo needs eps > 0 and uniform_gap > 0");
  }
  const int samples = std::max(o.samples_per_cell, 1);
  DemoResult out;
  out.eps = o.eps;

  std::vector<double> values;
  for (std::int64_t rho = 1;; rho *= 2) {
    if (rho > o.max_rho) {
      throw PreconditionError("theorem_demo: no step approximation within uniform_gap up to max_rho cells");
    }
    values.assign(static_cast<std::size_t>(rho), 0.0);
    double worst = 0.0;
    for (std::int64_t k = 0; k < rho; ++k) {
      const Interval cell{cell_point(k, rho), cell_point(k + 1, rho)};
      double lo = INFINITY, hi = -INFINITY;
      for (int i = 0; i < samples; ++i) {
        const double y = f(affine_point(cell, (i + 0.5) / samples));
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
      values[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
      worst = std::max(worst, 0.5 * (hi - lo));
    }
    if (worst <= o.uniform_gap) {
      out.sup_f_minus_phi = worst;
      break;
    }
  }
  out.phi = StepFunction::uniform(std::move(values));

  out.nu = choose_nu(mu.total_mass(), o.eps);
  ClaimOptions co;
  co.nu = out.nu;
  co.eps.kind = EpsilonSchedule::Kind::kUniform;
  co.eps.eps0 = o.eps0;
  co.kappa_cap = o.kappa_cap;
  co.r_cap = o.r_cap;
  co.workers = o.workers;
  out.claim = claim_run(out.phi, mu, co);
  if (!out.claim.certified) {
    std::ostringstream msg;
    msg << "correction round not certified: mu(E) = " << out.claim.mu_E << " < (1 - 7/" << out.nu
        << ") * " << out.claim.mu_total;
    throw CertificationError(msg.str());
  }

  std::vector<PiecewiseLinearFn> parts;
  parts.reserve(out.claim.cells.size());
  for (const CellResult& c : out.claim.cells) {
    parts.push_back(c.psi);
    if (c.gamma != 0.0) out.exceptional_mass += std::max(0.0, c.mu_J - c.mu_E);
    for (const Interval& iv : c.layout.E) {
      for (double x : {iv.lo, iv.hi}) {
        out.sup_f_minus_g_on_E = std::max(out.sup_f_minus_g_on_E, std::abs(f(x) - c.psi(x)));
      }
    }
  }
  out.g = concatenate(parts);
  return out;
}

namespace {

// ∫_0^1 exp(-i theta s) ds and ∫_0^1 s exp(-i theta s) ds.
std::pair<std::complex<double>, std::complex<double>> linear_weights(double theta) {
  using C = std::complex<double>;
  const C mit(0.0, -theta);
  if (std::abs(theta) < 0.5) {
    C e0 = 0.0, e1 = 0.0, power = 1.0;
    double fact = 1.0;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) {
        power *= mit;
        fact *= k;
      }
      e0 += power / (fact * (k + 1));
      e1 += power / (fact * (k + 2));
    }
    return {e0, e1};
  }
  const C e = std::exp(mit);
  const C e0 = (1.0 - e) / C(0.0, theta);
  const C e1 = (e * C(1.0, theta) - 1.0) / (theta * theta);
  return {e0, e1};
}

}  // namespace

std::vector<std::complex<double>> fourier_coefficients(const PiecewiseLinearFn& g, std::int64_t N) {
  if (N < 0) throw PreconditionError("fourier_coefficients needs N >= 0");
  std::vector<std::complex<double>> out(static_cast<std::size_t>(N + 1));
  const auto x = g.breakpoints();
  const auto v = g.values();
  for (std::int64_t n = 0; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      if (v[i] == 0.0 && v[i + 1] == 0.0) continue;
      const double h = x[i + 1] - x[i];
      const auto [e0, e1] = linear_weights(nn * h);
      s += h * std::polar(1.0, -nn * x[i]) * (v[i] * (e0 - e1) + v[i + 1] * e1);
    }
    out[static_cast<std::size_t>(n)] = s / kTwoPi;
  }
  return out;
}

PartialSumTable partial_sum_diagnostics(const PiecewiseLinearFn& g, std::vector<std::int64_t> N_list,
                                        std::int64_t grid) {
  if (grid < 1) throw PreconditionError("partial_sum_diagnostics needs grid >= 1");
  std::sort(N_list.begin(), N_list.end());
  N_list.erase(std::unique(N_list.begin(), N_list.end()), N_list.end());
  PartialSumTable out;
  if (N_list.empty()) return out;
  if (N_list.front() < 0) throw PreconditionError("partial sums need N >= 0");
  const std::int64_t N_max = N_list.back();
  const auto coef = fourier_coefficients(g, N_max);

  std::vector<double> sup(N_list.size(), 0.0);
  for (std::int64_t i = 0; i < grid; ++i) {
    const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
    const double target = g(x);
    double partial = coef[0].real();
    std::size_t next = 0;
    for (std::int64_t n = 0; n <= N_max; ++n) {
      if (n > 0) {
        partial += 2.0 * (coef[static_cast<std::size_t>(n)] * std::polar(1.0, static_cast<double>(n) * x)).real();
      }
      while (next < N_list.size() && N_list[next] == n) {
        sup[next] = std::max(sup[next], std::abs(partial - target));
        ++next;
      }
    }
  }
  std::size_t steady = 0;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    out.rows.push_back({N_list[i], sup[i]});
    if (i > 0 && sup[i] <= sup[i - 1]) ++steady;
  }
  if (N_list.size() > 1) out.monotone_fraction = static_cast<double>(steady) / static_cast<double>(N_list.size() - 1);
  return out;
}

}  // namespace menshov
