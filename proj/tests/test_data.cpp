// Copyright 2026 The pptree Authors.
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

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "pptree/data.hpp"
#include "pptree/error.hpp"
#include "pptree/fitstats.hpp"
#include "test_support.hpp"

using namespace pptree;

namespace {

AngleSample parse(const std::string& text, AngleUnit unit = AngleUnit::Radians) {
  std::istringstream in(text);
  return load_angles(in, unit, "test");
}

}  // namespace

TEST_CASE("load angles: radians, clock and reduction") {
  const auto a = parse("6.2832\n3.1416\n");
  REQUIRE(a.size() == 2);
  CHECK(std::fabs(wrap_difference(a.angles[0].radians() - kTwoPi)) < 1e-4);
  CHECK(a.angles[1].radians() == doctest::Approx(kPi).epsilon(1e-5));

  const auto c = parse("18.0\n", AngleUnit::Clock24);
  CHECK(c.angles[0].radians() == doctest::Approx(1.5 * kPi).epsilon(1e-15));
  const auto midnight = parse("24\n", AngleUnit::Clock24);
  CHECK(midnight.angles[0].radians() == kTwoPi);
  CHECK(midnight.warnings.empty());

  const auto d = parse("90\n", AngleUnit::Degrees);
  CHECK(d.angles[0].radians() == doctest::Approx(kPi / 2));

  const auto neg = parse("-0.5\n");
  CHECK(neg.angles[0].radians() == doctest::Approx(kTwoPi - 0.5).epsilon(1e-15));
  REQUIRE(neg.warnings.size() == 1);
  CHECK(neg.warnings[0].find("line 1") != std::string::npos);
}

TEST_CASE("load angles: header, delimiters, comments and duplicates") {
  const auto s = parse("theta\n# comment\n1.0\n\n  2.0 \n1.0\n");
  REQUIRE(s.size() == 3);
  CHECK(s.rows == std::vector<std::size_t>{3, 5, 6});
  CHECK(s.angles[0] == s.angles[2]);
  const auto comma = parse("angle,\n0.5,\n");
  CHECK(comma.size() == 1);
}

TEST_CASE("load angles: errors") {
  try {
    parse("theta\n1.0\nabc\n2.0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(""), IngestionError);
  CHECK_THROWS_AS(parse("theta\n# nothing\n"), IngestionError);
  CHECK_THROWS_AS(parse("1.0\n2.0 3.0\n"), ParseError);
  CHECK_THROWS_AS(parse("1.0\nnan\n"), ParseError);
  CHECK_THROWS_AS(parse_angle_unit("gradians"), DomainError);
  CHECK(parse_angle_unit("degrees") == AngleUnit::Degrees);
}

TEST_CASE("write and reload round trip") {
  Rng rng(8);
  const auto s = simulate_projected_normal(50, CenteringMeasure(0, 0), rng);
  std::ostringstream out;
  write_angles(out, s);
  const auto back = parse(out.str());
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.angles[i] == s.angles[i]);
  CHECK(back.warnings.empty());
}

TEST_CASE("embedded camera-trap data") {
  const auto p = triunfo("peccary");
  CHECK(p.size() == 16);
  CHECK(p.angles.front().radians() == 3.0757);
  CHECK(p.angles.back().radians() == 4.2632);
  const auto t = triunfo("tapir");
  CHECK(t.size() == 35);
  CHECK(t.angles.front().radians() == 3.3352);
  CHECK(t.angles.back().radians() == 0.5203);
  const auto d = triunfo("deer");
  CHECK(d.size() == 115);
  CHECK(d.angles.front().radians() == 4.5338);
  CHECK(d.angles.back().radians() == 5.5457);
  CHECK_THROWS_AS(triunfo("jaguar"), DomainError);
}

TEST_CASE("mixture generator") {
  MixtureSpec spec;
  CHECK(spec.weights == std::array<double, 4>{0.1, 0.2, 0.4, 0.3});
  CHECK(spec.locations[2] == std::array<double, 2>{-1.0, -2.0});
  CHECK_NOTHROW(spec.validate());

  MixtureSpec point;
  point.weights = {1, 0, 0, 0};
  point.locations[0] = {1e6, 0};
  Rng rng(12);
  const auto s = simulate_mixture(200, point, rng);
  for (const auto& a : s.angles) {
    CHECK(std::fabs(wrap_difference(a.radians() - kTwoPi)) < 1e-3);
  }

  MixtureSpec bad;
  bad.weights = {0.5, 0.5, 0.5, 0.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(simulate_mixture(0, spec, rng), DomainError);

  Rng r1(77), r2(77);
  const auto x = simulate_mixture(30, spec, r1);
  const auto y = simulate_mixture(30, spec, r2);
  CHECK(x.angles == y.angles);
}

TEST_CASE("mixture quadrant frequency matches an independent oracle") {
  // Oracle: draw the same mixture directly with std::normal_distribution.
  const MixtureSpec spec;
  std::mt19937_64 eng(2718);
  std::normal_distribution<double> nd;
  std::discrete_distribution<int> comp(spec.weights.begin(), spec.weights.end());
  const int oracle_n = 2000000;
  int oracle_q3 = 0;
  for (int i = 0; i < oracle_n; ++i) {
    const auto& loc = spec.locations[comp(eng)];
    const double x = loc[0] + nd(eng);
    const double y = loc[1] + nd(eng);
    oracle_q3 += (x < 0 && y < 0);
  }
  Rng rng(31);
  const auto s = simulate_mixture(100000, spec, rng);
  int q3 = 0;
  for (const auto& a : s.angles) q3 += (a.radians() > kPi && a.radians() < 1.5 * kPi);
  CHECK(std::fabs(static_cast<double>(q3) / s.size() -
                  static_cast<double>(oracle_q3) / oracle_n) < 0.03);
}

TEST_CASE("projected normal generator") {
  Rng rng(55);
  const auto iso = simulate_projected_normal(5000, CenteringMeasure(0, 0), rng);
  std::vector<double> th;
  for (const auto& a : iso.angles) th.push_back(a.radians());
  CHECK(testsupport::ks_pvalue(th, [](double t) { return t / kTwoPi; }) > 0.01);

  const auto off = simulate_projected_normal(5000, CenteringMeasure(5, 5), rng);
  CHECK(std::fabs(sample_moments(off.angles).mean_direction.radians() - kPi / 4) < 0.05);

  Rng a(3), b(3);
  CHECK(simulate_projected_normal(1, CenteringMeasure(1, 2), a).angles ==
        simulate_projected_normal(1, CenteringMeasure(1, 2), b).angles);
  for (const auto& x : off.angles) CHECK((x.radians() > 0.0 && x.radians() <= kTwoPi));
}
