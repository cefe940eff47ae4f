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

#include "menshov/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <variant>

namespace menshov {

MeasureSpec MeasureSpec::lebesgue(Interval domain, double scale) {
  MeasureSpec s;
  s.kind = Kind::kLebesgue;
  s.domain = domain;
  s.scale = scale;
  return s;
}

MeasureSpec MeasureSpec::atomic(Interval domain, std::vector<Atom> atoms) {
  MeasureSpec s;
  s.kind = Kind::kAtomic;
  s.domain = domain;
  s.atoms = std::move(atoms);
  return s;
}

MeasureSpec MeasureSpec::cantor(Interval domain, int levels, double total) {
  MeasureSpec s;
  s.kind = Kind::kCantor;
  s.domain = domain;
  s.levels = levels;
  s.total = total;
  return s;
}

MeasureSpec MeasureSpec::cdf_table(Interval domain, std::vector<std::pair<double, double>> table) {
  MeasureSpec s;
  s.kind = Kind::kCdfTable;
  s.domain = domain;
  s.table = std::move(table);
  return s;
}

MeasureSpec MeasureSpec::mixture(Interval domain, std::vector<Component> components) {
  MeasureSpec s;
  s.kind = Kind::kMixture;
  s.domain = domain;
  s.components = std::move(components);
  return s;
}

namespace detail {

struct UniformPart {
  Interval support;
  double density;
};

// Level-`levels` approximation of the Cantor measure: exact on every
// removed middle third, uniform inside the 2^levels surviving intervals.
struct CantorPart {
  Interval support;
  int levels;
  double mass;
};

// Continuous piecewise-affine CDF through the knots (x[i], cum[i]), cum[0] = 0.
struct TablePart {
  std::vector<double> x;
  std::vector<double> cum;
  std::vector<double> area;  // area[i] = integral of the CDF over [x[0], x[i]]
};

using Part = std::variant<UniformPart, CantorPart, TablePart>;

struct MeasureData {
  Interval domain;
  std::vector<Atom> atoms;         // sorted, merged
  std::vector<double> atom_cum;    // atom_cum[i] = mass of atoms[0..i]
  std::vector<Part> parts;
  double total = 0.0;
};

namespace {

double cantor_unit_cdf(double t, int levels) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double acc = 0.0;
  double w = 1.0;
  for (int i = 0; i < levels; ++i) {
    w *= 0.5;
    if (t <= 1.0 / 3.0) {
      t *= 3.0;
    } else if (t >= 2.0 / 3.0) {
      acc += w;
      t = 3.0 * t - 2.0;
    } else {
      return acc + w;
    }
  }
  return acc + w * t;
}

// Antiderivative of cantor_unit_cdf vanishing at 0.
double cantor_unit_integral(double t, int levels) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 0.5 + (t - 1.0);
  double acc = 0.0;
  double scale = 1.0;
  for (int i = 0; i < levels; ++i) {
    if (t <= 1.0 / 3.0) {
      t *= 3.0;
    } else if (t >= 2.0 / 3.0) {
      acc += scale * (0.25 + 0.5 * (t - 2.0 / 3.0));
      t = 3.0 * t - 2.0;
    } else {
      return acc + scale * (1.0 / 12.0 + 0.5 * (t - 1.0 / 3.0));
    }
    scale /= 6.0;
  }
  return acc + scale * 0.5 * t * t;
}

bool cantor_unit_affine(double ta, double tb, int levels) {
  for (int i = 0; i < levels; ++i) {
    if (tb <= 1.0 / 3.0) {
      ta *= 3.0;
      tb *= 3.0;
    } else if (ta >= 2.0 / 3.0) {
      ta = 3.0 * ta - 2.0;
      tb = 3.0 * tb - 2.0;
    } else if (ta >= 1.0 / 3.0 && tb <= 2.0 / 3.0) {
      return true;  // plateau
    } else {
      return false;
    }
  }
  return true;
}

double part_cdf(const UniformPart& p, double x) {
  return p.density * (std::clamp(x, p.support.lo, p.support.hi) - p.support.lo);
}

double part_cdf(const CantorPart& p, double x) {
  if (x <= p.support.lo) return 0.0;
  if (x >= p.support.hi) return p.mass;
  return p.mass * cantor_unit_cdf((x - p.support.lo) / p.support.length(), p.levels);
}

double part_cdf(const TablePart& p, double x) {
  if (x <= p.x.front()) return 0.0;
  if (x >= p.x.back()) return p.cum.back();
  const auto it = std::upper_bound(p.x.begin(), p.x.end(), x);
  const auto i = static_cast<std::size_t>(it - p.x.begin()) - 1;
  const double x0 = p.x[i], x1 = p.x[i + 1];
  return p.cum[i] + (p.cum[i + 1] - p.cum[i]) * ((x - x0) / (x1 - x0));
}

// Antiderivatives of the part CDFs, vanishing left of the support.
double part_integral(const UniformPart& p, double x) {
  if (x <= p.support.lo) return 0.0;
  const double c = std::min(x, p.support.hi) - p.support.lo;
  double g = 0.5 * p.density * c * c;
  if (x > p.support.hi) g += p.density * p.support.length() * (x - p.support.hi);
  return g;
}

double part_integral(const CantorPart& p, double x) {
  if (x <= p.support.lo) return 0.0;
  const double len = p.support.length();
  double g = p.mass * len * cantor_unit_integral((std::min(x, p.support.hi) - p.support.lo) / len, p.levels);
  if (x > p.support.hi) g += p.mass * (x - p.support.hi);
  return g;
}

double part_integral(const TablePart& p, double x) {
  if (x <= p.x.front()) return 0.0;
  if (x >= p.x.back()) return p.area.back() + p.cum.back() * (x - p.x.back());
  const auto it = std::upper_bound(p.x.begin(), p.x.end(), x);
  const auto i = static_cast<std::size_t>(it - p.x.begin()) - 1;
  return p.area[i] + 0.5 * (p.cum[i] + part_cdf(p, x)) * (x - p.x[i]);
}

Interval part_support(const UniformPart& p) { return p.support; }
Interval part_support(const CantorPart& p) { return p.support; }
Interval part_support(const TablePart& p) { return {p.x.front(), p.x.back()}; }

bool affine_inside(const UniformPart&, double, double) { return true; }
bool affine_inside(const CantorPart& p, double a, double b) {
  const double len = p.support.length();
  return cantor_unit_affine((a - p.support.lo) / len, (b - p.support.lo) / len, p.levels);
}
bool affine_inside(const TablePart& p, double a, double b) {
  const auto it = std::upper_bound(p.x.begin(), p.x.end(), a);
  return it == p.x.end() || *it >= b;
}

template <class P>
bool part_affine(const P& p, double a, double b) {
  const Interval s = part_support(p);
  if (b <= s.lo || a >= s.hi) return true;
  const double ca = std::max(a, s.lo);
  const double cb = std::min(b, s.hi);
  if (!affine_inside(p, ca, cb)) return false;
  // Straddling a support end joins a flat piece to this one.
  if (a < s.lo || b > s.hi) return part_cdf(p, cb) == part_cdf(p, ca);
  return true;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError("measure spec: " + what);
}

void collect(const MeasureSpec& spec, double weight, MeasureData& out) {
  const Interval& d = spec.domain;
  require(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi, "domain must satisfy lo < hi");
  switch (spec.kind) {
    case MeasureSpec::Kind::kLebesgue:
      require(spec.scale > 0.0 && std::isfinite(spec.scale), "lebesgue scale must be positive");
      out.parts.emplace_back(UniformPart{d, weight * spec.scale});
      break;
    case MeasureSpec::Kind::kAtomic:
      require(!spec.atoms.empty(), "atomic measure needs at least one atom");
      for (const Atom& a : spec.atoms) {
        require(d.contains(a.position), "atom at " + std::to_string(a.position) + " outside domain");
        require(a.mass > 0.0 && std::isfinite(a.mass), "atom masses must be positive");
        out.atoms.push_back({a.position, weight * a.mass});
      }
      break;
    case MeasureSpec::Kind::kCantor:
      require(spec.levels >= 1 && spec.levels <= 64, "cantor levels must be in [1, 64]");
      require(spec.total > 0.0 && std::isfinite(spec.total), "cantor total must be positive");
      out.parts.emplace_back(CantorPart{d, spec.levels, weight * spec.total});
      break;
    case MeasureSpec::Kind::kCdfTable: {
      const auto& t = spec.table;
      require(t.size() >= 2, "cdf table needs at least two knots");
      require(t.front().first == d.lo && t.back().first == d.hi,
              "cdf table must start at domain lo and end at domain hi");
      require(t.front().second >= 0.0, "cdf table values must be nonnegative");
      TablePart part;
      double jumps = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto [x, f] = t[i];
        require(std::isfinite(x) && std::isfinite(f), "cdf table entries must be finite");
        if (i == 0) {
          if (f > 0.0) out.atoms.push_back({x, weight * f});
          jumps = f;
          part.x.push_back(x);
          part.cum.push_back(0.0);
          continue;
        }
        const auto [px, pf] = t[i - 1];
        require(x >= px, "cdf table x must be nondecreasing");
        require(f >= pf, "cdf table F must be nondecreasing");
        if (x == px) {
          require(i < 2 || t[i - 2].first != x, "at most one jump entry per x");
          if (f > pf) out.atoms.push_back({x, weight * (f - pf)});
          jumps += f - pf;
        } else {
          part.x.push_back(x);
          part.cum.push_back(weight * (f - jumps));
        }
      }
      require(t.back().second > 0.0, "cdf table total mass must be positive");
      part.area.assign(part.x.size(), 0.0);
      for (std::size_t i = 1; i < part.x.size(); ++i) {
        part.area[i] = part.area[i - 1] + 0.5 * (part.cum[i - 1] + part.cum[i]) * (part.x[i] - part.x[i - 1]);
      }
      if (part.x.size() >= 2 && part.cum.back() > 0.0) out.parts.emplace_back(std::move(part));
      break;
    }
    case MeasureSpec::Kind::kMixture:
      require(!spec.components.empty(), "mixture needs at least one component");
      for (const auto& c : spec.components) {
        require(c.weight > 0.0 && std::isfinite(c.weight), "mixture weights must be positive");
        require(d.contains(c.measure.domain), "mixture component domain must lie inside the mixture domain");
        collect(c.measure, weight * c.weight, out);
      }
      break;
  }
}

double parts_cdf(const MeasureData& d, double x) {
  double s = 0.0;
  for (const Part& p : d.parts) s += std::visit([x](const auto& q) { return part_cdf(q, x); }, p);
  return s;
}

double parts_integral(const MeasureData& d, double x) {
  double s = 0.0;
  for (const Part& p : d.parts) s += std::visit([x](const auto& q) { return part_integral(q, x); }, p);
  return s;
}

}  // namespace
}  // namespace detail

Measure build_measure(const MeasureSpec& spec) {
  auto data = std::make_shared<detail::MeasureData>();
  data->domain = spec.domain;
  detail::collect(spec, 1.0, *data);

  auto& atoms = data->atoms;
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().position == a.position) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  atoms = std::move(merged);
  data->atom_cum.resize(atoms.size());
  double run = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) data->atom_cum[i] = (run += atoms[i].mass);

  data->total = run + detail::parts_cdf(*data, spec.domain.hi);
  detail::require(data->total > 0.0 && std::isfinite(data->total), "total mass must be positive and finite");

  Measure m;
  m.data_ = std::move(data);
  m.domain_ = spec.domain;
  m.window_ = spec.domain;
  return m;
}

double Measure::to_base(double y) const { return identity_ ? y : affine_point(window_, y); }

double Measure::from_base(double x) const {
  return identity_ ? x : (x - window_.lo) / window_.length();
}

double Measure::base_cdf(double x) const {
  const auto& d = *data_;
  if (x < d.domain.lo) return 0.0;
  if (x >= d.domain.hi) return d.total;
  double s = detail::parts_cdf(d, x);
  const auto it = std::upper_bound(d.atoms.begin(), d.atoms.end(), x,
                                   [](double v, const Atom& a) { return v < a.position; });
  if (it != d.atoms.begin()) s += d.atom_cum[static_cast<std::size_t>(it - d.atoms.begin()) - 1];
  return s;
}

double Measure::base_cdf_left(double x) const {
  const auto& d = *data_;
  if (x <= d.domain.lo) return 0.0;
  if (x > d.domain.hi) return d.total;
  double s = detail::parts_cdf(d, x);
  const auto it = std::lower_bound(d.atoms.begin(), d.atoms.end(), x,
                                   [](const Atom& a, double v) { return a.position < v; });
  if (it != d.atoms.begin()) s += d.atom_cum[static_cast<std::size_t>(it - d.atoms.begin()) - 1];
  return s;
}

double Measure::total_mass() const { return identity_ ? data_->total : 1.0; }

double Measure::cdf(double x) const {
  if (x < domain_.lo) return 0.0;
  if (x >= domain_.hi) return total_mass();
  if (identity_) return base_cdf(x);
  return (base_cdf(to_base(x)) - offset_) / norm_;
}

double Measure::cdf_left(double x) const {
  if (x <= domain_.lo) return 0.0;
  if (x > domain_.hi) return total_mass();
  if (identity_) return base_cdf_left(x);
  return (base_cdf_left(to_base(x)) - offset_) / norm_;
}

double Measure::continuous_cdf(double x) const {
  if (x <= domain_.lo) return 0.0;
  const double xc = std::min(x, domain_.hi);
  if (identity_) return detail::parts_cdf(*data_, xc);
  return (detail::parts_cdf(*data_, to_base(xc)) - cont_offset_) / norm_;
}

double Measure::interval_mass(double a, double b) const {
  const double slack = 1e-12 * domain_.length();
  if (!(a <= b + slack) || a < domain_.lo - slack || b > domain_.hi + slack) {
    throw PreconditionError("interval [" + std::to_string(a) + ", " + std::to_string(b) +
                            "] is not inside the measure domain");
  }
  a = std::clamp(a, domain_.lo, domain_.hi);
  b = std::clamp(b, a, domain_.hi);
  return std::max(0.0, cdf(b) - cdf_left(a));
}

double Measure::continuous_cdf_integral(double a, double b) const {
  a = std::clamp(a, domain_.lo, domain_.hi);
  b = std::clamp(b, a, domain_.hi);
  if (identity_) return detail::parts_integral(*data_, b) - detail::parts_integral(*data_, a);
  const double base = (detail::parts_integral(*data_, to_base(b)) - detail::parts_integral(*data_, to_base(a))) /
                      window_.length();
  return (base - (b - a) * cont_offset_) / norm_;
}

double Measure::continuous_mass(double a, double b) const {
  return continuous_cdf(b) - continuous_cdf(a);
}

bool Measure::continuous_affine_on(double a, double b) const {
  const double ba = to_base(a);
  const double bb = to_base(b);
  for (const auto& p : data_->parts) {
    const bool ok = std::visit([&](const auto& q) { return detail::part_affine(q, ba, bb); }, p);
    if (!ok) return false;
  }
  return true;
}

std::vector<Atom> Measure::atoms() const {
  std::vector<Atom> out;
  for (const Atom& a : data_->atoms) {
    if (identity_) {
      out.push_back(a);
    } else if (window_.contains(a.position)) {
      out.push_back({std::clamp(from_base(a.position), 0.0, 1.0), a.mass / norm_});
    }
  }
  return out;
}

Measure normalize(const Measure& m, const Interval& window) {
  const Interval& d = m.domain();
  if (!(window.lo < window.hi) || window.lo < d.lo || window.hi > d.hi) {
    throw PreconditionError("normalization window must be a nondegenerate subinterval of the domain");
  }
  Measure out = m;
  out.identity_ = false;
  out.domain_ = {0.0, 1.0};
  out.window_ = {m.to_base(window.lo), m.to_base(window.hi)};
  out.offset_ = m.base_cdf_left(out.window_.lo);
  out.cont_offset_ = detail::parts_cdf(*m.data_, out.window_.lo);
  out.norm_ = m.base_cdf(out.window_.hi) - out.offset_;
  if (!(out.norm_ > 0.0)) {
    throw PreconditionError("degenerate normalization: window has zero mass");
  }
  return out;
}

double default_jump_tolerance(const Measure& m) { return 1e-9 * m.total_mass(); }

std::vector<Atom> atomic_part(const Measure& m, double tolerance) {
  if (tolerance < 0.0) tolerance = default_jump_tolerance(m);
  std::vector<Atom> out;
  for (const Atom& a : m.atoms()) {
    if (a.mass > tolerance) out.push_back(a);
  }
  return out;
}

bool is_non_atomic(const Measure& m, double tolerance) { return atomic_part(m, tolerance).empty(); }

}  // namespace menshov
