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

#include "menshov/fourier_stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <sstream>

#include "menshov/parallel.hpp"

namespace menshov {

namespace {


// exp(-2 pi i f t) with the argument reduced mod 1 first.
std::complex<double> character(double f, double t) {
  const double u = f * t;
  const double frac = u - std::nearbyint(u);
  return std::polar(1.0, -kTwoPi * frac);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void require_probability_on_unit(const Measure& nu) {
  if (nu.domain() != Interval{0.0, 1.0} || std::abs(nu.total_mass() - 1.0) > 1e-12) {
    throw PreconditionError("Fourier-Stieltjes coefficients need a probability measure on [0, 1]");
  }
}

struct CellWalk {
  const Measure& nu;
  double freq;
  std::int64_t cells;
  std::complex<double> sum{0.0, 0.0};
  double error = 0.0;

  double at(std::int64_t i) const { return static_cast<double>(i) / static_cast<double>(cells); }

  // Cells [lo, hi) with continuous CDF values f_lo, f_hi at their ends.
  void walk(std::int64_t lo, std::int64_t hi, double f_lo, double f_hi) {
    const double mass = f_hi - f_lo;
    if (!(mass > 0.0)) return;
    const double p = at(lo);
    const double q = at(hi);
    const double mid = 0.5 * (p + q);
    if (nu.continuous_affine_on(p, q)) {
      sum += mass * character(freq, mid) * sinc(std::numbers::pi * freq * (q - p));
      return;
    }
    if (hi - lo == 1) {
      // tag at the cell's centroid under the measure
      const double offset = (q - p) * f_hi - nu.continuous_cdf_integral(p, q);
      const double tag = p + std::clamp(offset / mass, 0.0, q - p);
      sum += mass * character(freq, tag);
      error += kTwoPi * std::abs(freq) * (q - p) * mass;
      return;
    }
    const std::int64_t split = lo + (hi - lo) / 2;
    const double f_split = nu.continuous_cdf(at(split));
    walk(lo, split, f_lo, f_split);
    walk(split, hi, f_split, f_hi);
  }
};

Coefficient coefficient_unchecked(const Measure& nu, std::int64_t j, int refinement) {
  const double f = static_cast<double>(j);
  Coefficient c;
  for (const Atom& a : nu.atoms()) c.value += a.mass * character(f, a.position);

  const std::int64_t cells = static_cast<std::int64_t>(refinement) * std::max<std::int64_t>(1, std::llabs(j));
  CellWalk w{nu, f, cells};
  w.walk(0, cells, nu.continuous_cdf(0.0), nu.continuous_cdf(1.0));
  c.value += w.sum;
  c.error = w.error;
  if (c.error > 0.5) {
    std::ostringstream msg;
    msg << "coefficient at j=" << j << " has error bound " << c.error
        << " > 0.5; increase the refinement (currently " << refinement << ")";
    throw NumericError(msg.str());
  }
  return c;
}

}  // namespace

Coefficient coefficient(const Measure& nu, std::int64_t j, int refinement) {
  require_probability_on_unit(nu);
  if (refinement < 1) throw PreconditionError("refinement must be positive");
  return coefficient_unchecked(nu, j, refinement);
}

CoefficientTable::CoefficientTable(const Measure& nu, std::span<const std::int64_t> frequencies,
                                   int refinement, int workers)
    : refinement_(refinement) {
  require_probability_on_unit(nu);
  if (refinement < 1) throw PreconditionError("refinement must be positive");
  const std::set<std::int64_t> unique(frequencies.begin(), frequencies.end());
  const std::vector<std::int64_t> freqs(unique.begin(), unique.end());
  std::vector<Coefficient> values(freqs.size());
  parallel_for(freqs.size(), workers,
               [&](std::size_t i) { values[i] = coefficient_unchecked(nu, freqs[i], refinement); });
  for (std::size_t i = 0; i < freqs.size(); ++i) entries_.emplace(freqs[i], values[i]);
}

namespace {

std::vector<std::int64_t> multiples(std::int64_t k, std::int64_t N) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(N + 1));
  for (std::int64_t n = 0; n <= N; ++n) out.push_back(n * k);
  return out;
}

}  // namespace

double wiener_average(const CoefficientTable& table, std::int64_t k, std::int64_t N) {
  if (k == 0) throw PreconditionError("wiener_average needs k != 0");
  if (N < 0) throw PreconditionError("wiener_average needs N >= 0");
  double s = 0.0;
  for (std::int64_t n = 0; n <= N; ++n) s += std::norm(table.at(n * k).value);
  return s / static_cast<double>(N + 1);
}

double wiener_average(const Measure& nu, std::int64_t k, std::int64_t N, int refinement, int workers) {
  if (k == 0) throw PreconditionError("wiener_average needs k != 0");
  if (N < 0) throw PreconditionError("wiener_average needs N >= 0");
  const auto freqs = multiples(k, N);
  const CoefficientTable table(nu, freqs, refinement, workers);
  return wiener_average(table, k, N);
}

bool IndexSet::contains(std::int64_t n) const {
  return std::binary_search(members.begin(), members.end(), n);
}

IndexSet lambda_jk(const CoefficientTable& table, std::int64_t j, std::int64_t k, std::int64_t N_max) {
  if (j < 1) throw PreconditionError("lambda_jk needs j >= 1");
  if (k == 0) throw PreconditionError("lambda_jk needs k != 0");
  IndexSet out;
  out.horizon = N_max;
  const double threshold = 1.0 / static_cast<double>(j);
  for (std::int64_t n = 0; n <= N_max; ++n) {
    const Coefficient& c = table.at(n * k);
    if (std::abs(c.value) + c.error <= threshold) out.members.push_back(n);
  }
  out.density = static_cast<double>(out.members.size()) / static_cast<double>(N_max + 1);
  out.provenance.push_back({j, k, out.density});
  return out;
}

IndexSet lambda_jk(const Measure& nu, std::int64_t j, std::int64_t k, std::int64_t N_max,
                   int refinement, int workers) {
  if (k == 0) throw PreconditionError("lambda_jk needs k != 0");
  if (N_max < 0) throw PreconditionError("lambda_jk needs N_max >= 0");
  const auto freqs = multiples(k, N_max);
  const CoefficientTable table(nu, freqs, refinement, workers);
  return lambda_jk(table, j, k, N_max);
}

IndexSet build_lambda(const Measure& nu, const LambdaParams& p) {
  if (p.K < 1 || p.J < 1 || p.m < 1 || p.N_max < 0) {
    throw PreconditionError("build_lambda needs K, J, m >= 1 and N_max >= 0");
  }
  require_probability_on_unit(nu);
  const auto atoms = atomic_part(nu);
  if (!atoms.empty()) {
    std::ostringstream msg;
    msg << "measure has " << atoms.size() << " atom(s) (largest jump at x=" << atoms.front().position
        << "); its Wiener averages do not vanish, so no density-one set of small coefficients exists";
    throw PreconditionError(msg.str());
  }

  std::vector<std::int64_t> freqs;
  for (std::int64_t k = 1; k <= p.K; ++k) {
    for (std::int64_t n = 0; n <= p.N_max; ++n) freqs.push_back(n * k);
  }
  const CoefficientTable table(nu, freqs, p.refinement, p.workers);

  IndexSet out;
  out.horizon = p.N_max;
  out.modulus = p.m;
  std::vector<char> keep(static_cast<std::size_t>(p.N_max + 1), 1);
  for (std::int64_t k = 1; k <= p.K; ++k) {
    for (std::int64_t j = 1; j <= p.J; ++j) {
      const IndexSet set = lambda_jk(table, j, k, p.N_max);
      out.provenance.push_back({j, k, set.density});
      out.provenance.push_back({j, -k, set.density});
      if (j != p.J) continue;  // Lambda_{J,k} is contained in every Lambda_{j,k}, j < J
      std::vector<char> in(keep.size(), 0);
      for (std::int64_t n : set.members) in[static_cast<std::size_t>(n)] = 1;
      for (std::size_t n = 0; n < keep.size(); ++n) keep[n] = keep[n] && in[n];
    }
  }
  for (std::int64_t n = p.m; n <= p.N_max; n += p.m) {
    if (keep[static_cast<std::size_t>(n)]) out.members.push_back(n);
  }
  out.density = static_cast<double>(out.members.size()) / static_cast<double>(p.N_max + 1);
  const double relative = out.density * static_cast<double>(p.m);
  if (relative < p.density_floor) {
    std::ostringstream msg;
    msg << "density within multiples of " << p.m << " is " << relative << ", below the floor "
        << p.density_floor << " at horizon " << p.N_max;
    out.warnings.push_back(msg.str());
  }
  return out;
}

}  // namespace menshov
