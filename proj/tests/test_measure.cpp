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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "menshov/measure.hpp"
#include "menshov/measure_io.hpp"
#include "oracles.hpp"

using namespace menshov;

namespace {

const double kPi = std::numbers::pi;

Measure lebesgue() { return build_measure(MeasureSpec::lebesgue({0.0, kTwoPi})); }
Measure cantor(int levels = 40) { return build_measure(MeasureSpec::cantor({0.0, 1.0}, levels)); }

}  // namespace

TEST_CASE("build_measure: basic totals") {
  CHECK(lebesgue().total_mass() == doctest::Approx(kTwoPi).epsilon(1e-15));
  const Measure a = build_measure(MeasureSpec::atomic({0.0, kTwoPi}, {{1.0, 0.3}}));
  CHECK(a.cdf_left(1.0) == 0.0);
  CHECK(a.cdf(1.0) == doctest::Approx(0.3));
  CHECK(a.jump(1.0) == doctest::Approx(0.3));
  CHECK(build_measure(MeasureSpec::cantor({0.0, 1.0}, 20)).cdf(0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("interval_mass examples") {
  CHECK(lebesgue().interval_mass(0.0, kPi) == doctest::Approx(kPi));
  CHECK(cantor().interval_mass(0.0, 1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-12));
  const Measure a = build_measure(MeasureSpec::atomic({0.0, kTwoPi}, {{1.0, 0.3}}));
  CHECK(a.interval_mass(0.5, 1.5) == doctest::Approx(0.3));
  CHECK(a.interval_mass(1.0, 1.0) == doctest::Approx(0.3));
  CHECK_THROWS_AS(a.interval_mass(-1.0, 1.0), PreconditionError);
}

TEST_CASE("cantor cdf agrees with the ternary-digit oracle") {
  const Measure m = cantor();
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(m.cdf(x) == doctest::Approx(oracle::cantor_cdf(x, 40)).epsilon(1e-12));
  }
}

TEST_CASE("cdf invariants") {
  const Measure m = build_measure(MeasureSpec::mixture(
      {0.0, kTwoPi}, {{0.5, MeasureSpec::cantor({0.0, kTwoPi}, 12)},
                      {0.25, MeasureSpec::atomic({0.0, kTwoPi}, {{2.0, 1.0}, {kTwoPi, 0.5}})},
                      {1.0, MeasureSpec::lebesgue({1.0, 3.0})}}));
  CHECK(m.cdf_left(0.0) == 0.0);
  CHECK(m.cdf(kTwoPi) == doctest::Approx(m.total_mass()));
  CHECK(m.total_mass() == doctest::Approx(0.5 + 0.375 + 2.0));
  double prev = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = kTwoPi * i / 4000.0;
    CHECK(m.cdf(x) >= prev);
    prev = m.cdf(x);
  }
  double jumps = 0.0;
  for (const Atom& a : m.atoms()) jumps += a.mass;
  CHECK(jumps <= m.total_mass());
}

TEST_CASE("normalize") {
  const Measure full = normalize(lebesgue(), {0.0, kTwoPi});
  CHECK(full.domain() == Interval{0.0, 1.0});
  CHECK(full.total_mass() == doctest::Approx(1.0));
  CHECK(full.cdf(0.25) == doctest::Approx(0.25));
  const Measure half = normalize(lebesgue(), {kPi, kTwoPi});
  CHECK(half.total_mass() == doctest::Approx(1.0));
  CHECK(half.cdf(0.7) == doctest::Approx(0.7));
  const Measure c = normalize(build_measure(MeasureSpec::cantor({0.0, 1.0}, 40, 3.0)), {0.0, 1.0});
  CHECK(c.total_mass() == doctest::Approx(1.0));
  CHECK(c.cdf(1.0 / 3.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(normalize(cantor(), {0.4, 0.5}), PreconditionError);  // inside a gap: zero mass
}

TEST_CASE("atomic_part") {
  CHECK(atomic_part(lebesgue()).empty());
  const Measure a = build_measure(MeasureSpec::atomic({0.0, kTwoPi}, {{1.0, 0.3}, {2.0, 0.2}}));
  const auto atoms = atomic_part(a);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].position == 1.0);
  CHECK(atoms[1].mass == doctest::Approx(0.2));

  const Measure mix = build_measure(MeasureSpec::mixture(
      {0.0, kTwoPi}, {{0.5, MeasureSpec::lebesgue({0.0, kTwoPi})},
                      {0.5, MeasureSpec::atomic({0.0, kTwoPi}, {{1.0, 1.0}})}}));
  const auto found = atomic_part(mix);
  REQUIRE(found.size() == 1);
  const auto scan = oracle::jump_scan([&](double x) { return mix.cdf(x); },
                                      [&](double x) { return mix.cdf_left(x); }, 0.0, kTwoPi,
                                      std::ldexp(1.0, -20), 1e-3);
  REQUIRE(scan.size() == 1);
  CHECK(found[0].position == doctest::Approx(scan[0].position).epsilon(1e-12));
  CHECK(found[0].mass == doctest::Approx(scan[0].mass).epsilon(1e-12));
  CHECK(found[0].mass == doctest::Approx(0.5));
  CHECK_FALSE(is_non_atomic(mix));
  CHECK(is_non_atomic(cantor()));
}

TEST_CASE("cdf_table measures") {
  const Measure t = build_measure(MeasureSpec::cdf_table({0.0, 1.0}, {{0.0, 0.1}, {0.5, 0.5}, {0.5, 0.7}, {1.0, 1.0}}));
  CHECK(t.jump(0.0) == doctest::Approx(0.1));
  CHECK(t.jump(0.5) == doctest::Approx(0.2));
  CHECK(t.cdf(0.25) == doctest::Approx(0.3));
  CHECK(t.total_mass() == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_measure(MeasureSpec::cdf_table({0.0, 1.0}, {{0.0, 0.5}, {1.0, 0.2}})), PreconditionError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_measure(MeasureSpec::atomic({0.0, 1.0}, {{2.0, 1.0}})), PreconditionError);
  CHECK_THROWS_AS(build_measure(MeasureSpec::atomic({0.0, 1.0}, {{0.5, -1.0}})), PreconditionError);
  CHECK_THROWS_AS(build_measure(MeasureSpec::lebesgue({1.0, 0.0})), PreconditionError);
  CHECK_THROWS_AS(build_measure(MeasureSpec::mixture({0.0, 1.0}, {{0.0, MeasureSpec::lebesgue({0.0, 1.0})}})),
                  PreconditionError);
}

TEST_CASE("measure spec JSON round trip") {
  const auto j = nlohmann::json::parse(R"({"kind": "mixture", "domain": [0, "2pi"], "components": [
      {"weight": 0.6, "measure": {"kind": "cantor", "domain": [0, "2pi"], "levels": 30}},
      {"weight": 0.4, "measure": {"kind": "atomic", "domain": [0, "2pi"], "atoms": [[1, 0.5]]}}]})");
  const MeasureSpec s = measure_spec_from_json(j);
  CHECK(s.domain.hi == kTwoPi);
  const MeasureSpec back = measure_spec_from_json(measure_spec_to_json(s));
  const Measure a = build_measure(s), b = build_measure(back);
  for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, kTwoPi}) CHECK(a.cdf(x) == b.cdf(x));
  CHECK(parse_real("0.5pi") == doctest::Approx(kPi / 2));
  CHECK(parse_real("2*pi") == doctest::Approx(kTwoPi));
  CHECK_THROWS_AS(parse_real("two"), ConfigError);
  CHECK_THROWS_AS(measure_spec_from_json(nlohmann::json::parse(R"({"kind": "gaussian", "domain": [0, 1]})")),
                  ConfigError);
}

TEST_CASE("continuous_cdf_integral against midpoint sums of the cdf") {
  const Measure mix = build_measure(MeasureSpec::mixture(
      {0.0, kTwoPi}, {{0.6, MeasureSpec::cantor({0.0, kTwoPi}, 40)},
                      {0.3, MeasureSpec::cdf_table({1.0, 3.0}, {{1.0, 0.0}, {2.0, 0.2}, {3.0, 1.0}})},
                      {0.1, MeasureSpec::lebesgue({2.0, 5.0})}}));
  const Measure view = normalize(mix, {0.5, 4.0});
  for (const auto& [a, b] : {std::pair{0.0, kTwoPi}, {0.3, 2.2}, {1.9, 2.05}, {4.0, 6.0}}) {
    const double ref = oracle::midpoint([&](double x) { return mix.continuous_cdf(x); }, a, b, 1 << 20);
    CHECK(mix.continuous_cdf_integral(a, b) == doctest::Approx(ref).epsilon(1e-9));
  }
  for (const auto& [a, b] : {std::pair{0.0, 1.0}, {0.1, 0.35}}) {
    const double ref = oracle::midpoint([&](double x) { return view.continuous_cdf(x); }, a, b, 1 << 20);
    CHECK(view.continuous_cdf_integral(a, b) == doctest::Approx(ref).epsilon(1e-9));
  }
}
