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
#include <vector>

#include "doctest.h"
#include "pptree/centering.hpp"
#include "pptree/error.hpp"
#include "pptree/random.hpp"
#include "test_support.hpp"

using namespace pptree;

TEST_CASE("normal cdf: symmetry and tails") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(8.0) > 1.0 - 1e-14);
  for (double z : {0.5, 1.0, 2.0}) {
    CHECK(std_normal_cdf(-z) + std_normal_cdf(z) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("normal cdf agrees with a series/continued-fraction oracle to 1e-12") {
  for (double z = -8.0; z <= 8.0; z += 0.0625) {
    CHECK(std::fabs(std_normal_cdf(z) - testsupport::oracle_normal_cdf(z)) <= 1e-12);
  }
}

TEST_CASE("normal cdf is monotone") {
  double prev = 0.0;
  for (double z = -10.0; z <= 10.0; z += 1e-3) {
    const double v = std_normal_cdf(z);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("normal quantile") {
  CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  const double oracle = testsupport::bisect(
      [](double z) { return testsupport::oracle_normal_cdf(z) - 0.975; }, 0.0, 5.0);
  CHECK(std::fabs(std_normal_quantile(0.975) - oracle) < 1e-10);
  CHECK(std::fabs(std_normal_quantile(0.975) - 1.959963984540054) < 1e-12);
  CHECK(std_normal_quantile(0.25) == doctest::Approx(-std_normal_quantile(0.75)).epsilon(1e-14));

  double prev = -1e300;
  for (double p : {1e-300, 1e-20, 1e-8, 0.01, 0.3, 0.5, 0.7, 0.99, 1 - 1e-8, 1 - 1e-15}) {
    const double q = std_normal_quantile(p);
    CHECK(q > prev);
    prev = q;
    if (p > 1e-15 && p < 1 - 1e-15) CHECK(std::fabs(std_normal_cdf(q) - p) <= 1e-10);
  }
  CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(-0.1), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("centering density") {
  const double inv2pi = 1.0 / (2.0 * kPi);
  CHECK(density_at(CenteringMeasure(0, 0), 0, 0) == doctest::Approx(inv2pi).epsilon(1e-15));
  CHECK(density_at(CenteringMeasure(1, 1), 1, 1) == doctest::Approx(inv2pi).epsilon(1e-15));
  CHECK(density_at(CenteringMeasure(0, 0), 3, 4) ==
        doctest::Approx(inv2pi * std::exp(-12.5)).epsilon(1e-14));
  CHECK(log_density_at(CenteringMeasure(0, 0), 3, 4) ==
        doctest::Approx(std::log(inv2pi) - 12.5).epsilon(1e-14));
  CHECK_THROWS_AS(CenteringMeasure(std::nan(""), 0), DomainError);
  CHECK_THROWS_AS(CenteringMeasure(0, INFINITY), DomainError);
}

TEST_CASE("centering density integrates to one over [-8,8]^2") {
  const CenteringMeasure c(0.3, -0.2);
  const int n = 800;
  const double lo = -8.0, h = 16.0 / n;
  double total = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double wa = (a == 0 || a == n) ? 0.5 : 1.0;
    for (int b = 0; b <= n; ++b) {
      const double wb = (b == 0 || b == n) ? 0.5 : 1.0;
      total += wa * wb * density_at(c, c.mu1() + lo + a * h, c.mu2() + lo + b * h);
    }
  }
  CHECK(std::fabs(total * h * h - 1.0) < 1e-6);
}

TEST_CASE("partition index examples") {
  CHECK(partition_index(CenteringMeasure(0, 0), -1, 1, 1) == PartitionIndex{1, 1, 2});
  CHECK(partition_index(CenteringMeasure(0, 0), 0, 0, 2) == PartitionIndex{2, 2, 2});
  const double q75 = std_normal_quantile(0.75);
  CHECK(partition_index(CenteringMeasure(2, 2), 2 + q75, 2, 2) == PartitionIndex{2, 3, 2});
  CHECK_THROWS_AS(partition_index(CenteringMeasure(0, 0), 0, 0, 0), DomainError);
}

namespace {

// Interval membership against explicit quantile endpoints; cells are
// (q_{j-1}, q_j] with q_0 = -inf and q_{2^m} = +inf.
std::int64_t oracle_cell(double z, int m) {
  const std::int64_t side = std::int64_t{1} << m;
  for (std::int64_t j = 1; j < side; ++j) {
    const double upper = std_normal_quantile(static_cast<double>(j) / side);
    if (z <= upper) return j;
  }
  return side;
}

}  // namespace

TEST_CASE("partition index agrees with a brute-force interval oracle") {
  Rng rng(42);
  const CenteringMeasure c(0.7, -1.3);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x1 = rng.normal(c.mu1(), 1.5);
    const double x2 = rng.normal(c.mu2(), 1.5);
    for (int m = 1; m <= 4; ++m) {
      const auto idx = partition_index(c, x1, x2, m);
      if (idx.j != oracle_cell(x1 - c.mu1(), m) || idx.k != oracle_cell(x2 - c.mu2(), m)) {
        ++mismatches;
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("partition index refines consistently") {
  Rng rng(7);
  const CenteringMeasure c(-0.4, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double x1 = rng.normal(c.mu1(), 2.0);
    const double x2 = rng.normal(c.mu2(), 2.0);
    for (int m = 1; m < 8; ++m) {
      const auto fine = partition_index(c, x1, x2, m + 1);
      const auto coarse = partition_index(c, x1, x2, m);
      REQUIRE(coarse.j == (fine.j + 1) / 2);
      REQUIRE(coarse.k == (fine.k + 1) / 2);
      REQUIRE(fine.j >= 1);
      REQUIRE(fine.j <= (std::int64_t{1} << (m + 1)));
    }
  }
}

TEST_CASE("partition index handles extreme coordinates") {
  const CenteringMeasure c(0, 0);
  CHECK(partition_index(c, -1e6, 1e6, 4) == PartitionIndex{4, 1, 16});
  CHECK(cell_from_probability(0.0, 3) == 1);
  CHECK(cell_from_probability(1.0, 3) == 8);
  CHECK(cell_from_probability(0.25, 2) == 1);
  CHECK(cell_from_probability(0.2500001, 2) == 2);
}
