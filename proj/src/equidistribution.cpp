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

#include "menshov/equidistribution.hpp"

#include <algorithm>
#include <cmath>

#include "menshov/parallel.hpp"

namespace menshov {

namespace {

void validate(double sigma, double tau) {
  if (!(sigma >= 0.0) || !(tau > 0.0) || !(sigma + tau <= 1.0)) {
    throw PreconditionError("M-set needs sigma >= 0, tau > 0 and sigma + tau <= 1");
  }
}

}  // namespace

std::vector<Interval> mset_intervals(const MSetSpec& spec) {
  validate(spec.sigma, spec.tau);
  if (spec.n < 1) throw PreconditionError("M-set needs n >= 1");
  if (!(spec.I.lo < spec.I.hi)) throw PreconditionError("M-set needs a nondegenerate interval");
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(spec.n));
  const double n = static_cast<double>(spec.n);
  for (std::int64_t k = 0; k < spec.n; ++k) {
    const double base = static_cast<double>(k);
    out.push_back({affine_point(spec.I, (base + spec.sigma) / n),
                   affine_point(spec.I, (base + spec.sigma + spec.tau) / n)});
  }
  return out;
}

double mset_mass(const Measure& mu, const MSetSpec& spec) {
  double s = 0.0;
  for (const Interval& iv : mset_intervals(spec)) s += mu.interval_mass(iv);
  return s;
}

double pushforward_arc_mass(const Measure& nu, std::int64_t n, const ArcSpec& arc) {
  if (nu.domain() != Interval{0.0, 1.0} || std::abs(nu.total_mass() - 1.0) > 1e-12) {
    throw PreconditionError("pushforward needs a probability measure on [0, 1]");
  }
  validate(arc.sigma, arc.tau);
  if (n < 1) throw PreconditionError("pushforward needs n >= 1");
  const double nn = static_cast<double>(n);
  double s = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double base = static_cast<double>(k);
    s += nu.interval_mass(std::min(1.0, (base + arc.sigma) / nn),
                          std::min(1.0, (base + arc.sigma + arc.tau) / nn));
  }
  return s;
}

ConvergenceTable proposition_scan(const Measure& mu, const Interval& I, double sigma, double tau,
                                  const IndexSet& lambda, int workers) {
  validate(sigma, tau);
  std::vector<std::int64_t> ns;
  for (std::int64_t n : lambda.members) {
    if (n >= 1) ns.push_back(n);
  }
  if (ns.empty()) throw PreconditionError("proposition_scan: empty index set");

  ConvergenceTable t;
  t.I = I;
  t.sigma = sigma;
  t.tau = tau;
  t.target = tau * mu.interval_mass(I);
  t.strict = MSetSpec{I, 1, sigma, tau}.strict();
  t.rows.resize(ns.size());
  parallel_for(ns.size(), workers, [&](std::size_t i) {
    const double mass = mset_mass(mu, {I, ns[i], sigma, tau});
    t.rows[i] = {ns[i], mass, std::abs(mass - t.target)};
  });
  const std::size_t tail = std::max<std::size_t>(1, t.rows.size() / 4);
  const std::size_t first = t.rows.size() - tail;
  t.tail_start = t.rows[first].n;
  for (std::size_t i = first; i < t.rows.size(); ++i) t.tail_sup = std::max(t.tail_sup, t.rows[i].error);
  return t;
}

}  // namespace menshov
