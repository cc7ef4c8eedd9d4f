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
#include <numeric>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "doctest.h"
#include "pptree/error.hpp"
#include "pptree/tree.hpp"
#include "test_support.hpp"

using namespace pptree;

TEST_CASE("rho") {
  CHECK(rho(1, 1.1) == 1.0);
  CHECK(rho(2, 1.1) == doctest::Approx(2.1435469250725863).epsilon(1e-14));
  CHECK(rho(4, 2.0) == 16.0);
}

TEST_CASE("tree params validation") {
  CHECK_NOTHROW(TreeParams{}.validate());
  CHECK_THROWS_AS((TreeParams{0, 1.0, 1.1}.validate()), DomainError);
  CHECK_THROWS_AS((TreeParams{4, 0.0, 1.1}.validate()), DomainError);
  CHECK_THROWS_AS((TreeParams{4, 1.0, 1.0}.validate()), DomainError);
}

TEST_CASE("uniform tree") {
  const auto t1 = BranchingTree::uniform(1);
  CHECK(t1.level(1).size() == 4);
  for (double y : t1.level(1)) CHECK(y == 0.25);
  const auto t2 = BranchingTree::uniform(2);
  CHECK(t2.level(1).size() == 4);
  CHECK(t2.level(2).size() == 16);
  for (double y : t2.level(2)) CHECK(y == 0.25);
  const auto t3 = BranchingTree::uniform(3);
  CHECK(t3.set_probability({3, 5, 2}) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK_THROWS_AS(t3.set_probability({4, 1, 1}), DomainError);
  CHECK_THROWS_AS(t3.set_probability({2, 5, 1}), DomainError);
}

TEST_CASE("set probability on a hand-built depth-2 tree") {
  BranchingTree t(2);
  t.set_children(0, 1, 1, {0.1, 0.2, 0.3, 0.4});
  t.set_children(1, 2, 1, {0.5, 0.25, 0.125, 0.125});
  // Cell (1,2,1) has probability 0.3; its child (2,4,1) is the third child.
  CHECK(t.set_probability({1, 2, 1}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(t.set_probability({2, 4, 1}) == doctest::Approx(0.3 * 0.125).epsilon(1e-15));
  CHECK(t.set_probability({2, 3, 2}) == doctest::Approx(0.3 * 0.25).epsilon(1e-15));
  CHECK(t.set_probability({2, 1, 1}) == doctest::Approx(0.1 * 0.25).epsilon(1e-15));
  CHECK(std::exp(t.log_path_product(4, 1)) == doctest::Approx(0.3 * 0.125).epsilon(1e-14));
  CHECK_THROWS_AS(t.set_children(0, 1, 1, {0.5, 0.5, 0.5, -0.5}), DomainError);
  CHECK_THROWS_AS(t.set_children(0, 1, 1, {0.3, 0.3, 0.3, 0.3}), DomainError);
}

TEST_CASE("prior draws keep sibling sums at one") {
  Rng rng(3);
  const TreeParams p{4, 0.3, 1.1};
  for (int d = 0; d < 50; ++d) {
    const auto t = sample_prior_tree(p, rng);
    for_each_parent(4, [&](int m, std::int64_t j, std::int64_t k) {
      const auto y = t.children(m, j, k);
      REQUIRE(std::fabs(y[0] + y[1] + y[2] + y[3] - 1.0) <= 1e-12);
      for (double v : y) REQUIRE((v >= 0.0 && v <= 1.0));
    });
    for (int m = 1; m <= 4; ++m) {
      double total = 0.0;
      const auto side = cells_per_axis(m);
      for (std::int64_t j = 1; j <= side; ++j) {
        for (std::int64_t k = 1; k <= side; ++k) total += t.set_probability({m, j, k});
      }
      REQUIRE(std::fabs(total - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("large alpha concentrates prior draws at one quarter") {
  Rng rng(11);
  const TreeParams p{1, 1e4, 1.1};
  std::vector<double> ys;
  for (int d = 0; d < 1000; ++d) ys.push_back(sample_prior_tree(p, rng).branch(1, 1, 1));
  const double a = p.alpha * rho(1, p.delta);
  const double marginal_var = 3.0 / (16.0 * (4.0 * a + 1.0));
  CHECK(testsupport::variance(ys) < 4.0 * marginal_var);
  CHECK(std::fabs(testsupport::mean(ys) - 0.25) < 0.01);
}

TEST_CASE("prior mean of set probabilities at level 2") {
  Rng rng(5);
  const TreeParams p{4, 1.0, 1.1};
  std::vector<double> v;
  for (int d = 0; d < 500; ++d) v.push_back(sample_prior_tree(p, rng).set_probability({2, 3, 1}));
  const double se = std::sqrt(testsupport::variance(v) / v.size());
  CHECK(std::fabs(testsupport::mean(v) - 1.0 / 16) < 3 * se);
}

TEST_CASE("zero-data Y marginal is Beta(a, 3a)") {
  Rng rng(17);
  const TreeParams p{2, 0.7, 1.1};
  const double a = p.alpha * rho(1, p.delta);
  std::vector<double> ys;
  for (int d = 0; d < 2000; ++d) ys.push_back(sample_prior_tree(p, rng).branch(1, 1, 1));
  const double pv = testsupport::ks_pvalue(
      ys, [&](double y) { return boost::math::ibeta(a, 3 * a, y); });
  CHECK(pv > 0.01);
}

TEST_CASE("joint density") {
  const CenteringMeasure c(0.5, -1.0);
  const auto u = BranchingTree::uniform(4);
  for (double x : {-3.0, -0.2, 0.0, 1.7}) {
    CHECK(joint_density(u, c, x, -x) == doctest::Approx(density_at(c, x, -x)).epsilon(1e-14));
  }

  Rng rng(23);
  const auto t = sample_prior_tree(TreeParams{3, 1.0, 1.1}, rng);
  // Two points in the same level-3 cell share the density ratio.
  const double q1 = std_normal_quantile(0.30) + c.mu1();
  const double q2 = std_normal_quantile(0.32) + c.mu1();
  const double r1 = joint_density(t, c, q1, c.mu2() + 0.1) / density_at(c, q1, c.mu2() + 0.1);
  const double r2 = joint_density(t, c, q2, c.mu2() + 0.12) / density_at(c, q2, c.mu2() + 0.12);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("joint density of a random depth-3 tree integrates to one") {
  Rng rng(29);
  const CenteringMeasure c(1.0, -0.5);
  const auto t = sample_prior_tree(TreeParams{3, 1.0, 1.1}, rng);
  const int n = 1200;
  const double h = 16.0 / n;
  double total = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double wa = (a == 0 || a == n) ? 0.5 : 1.0;
    for (int b = 0; b <= n; ++b) {
      const double wb = (b == 0 || b == n) ? 0.5 : 1.0;
      total += wa * wb * joint_density(t, c, c.mu1() - 8 + a * h, c.mu2() - 8 + b * h);
    }
  }
  CHECK(std::fabs(total * h * h - 1.0) < 5e-3);
}

TEST_CASE("count data") {
  const CenteringMeasure c(0, 0);
  const auto empty = count_data(c, {}, 3);
  CHECK(empty.total() == 0);
  for (int m = 1; m <= 3; ++m) {
    for (auto n : empty.level(m)) CHECK(n == 0);
  }

  const std::vector<PlanePoint> one{{0.3, -0.7}};
  const auto single = count_data(c, one, 3);
  for (int m = 1; m <= 3; ++m) {
    const auto lv = single.level(m);
    CHECK(std::accumulate(lv.begin(), lv.end(), std::int64_t{0}) == 1);
    const auto idx = partition_index(c, 0.3, -0.7, m);
    CHECK(single.count(m, idx.j, idx.k) == 1);
  }

  Rng rng(31);
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 100; ++i) pts.push_back({rng.normal(0, 2), rng.normal(0, 2)});
  const auto counts = count_data(c, pts, 4);
  for (int m = 1; m <= 4; ++m) {
    const auto lv = counts.level(m);
    CHECK(std::accumulate(lv.begin(), lv.end(), std::int64_t{0}) == 100);
    // Direct recount.
    for (std::int64_t j = 1; j <= cells_per_axis(m); ++j) {
      for (std::int64_t k = 1; k <= cells_per_axis(m); ++k) {
        std::int64_t direct = 0;
        for (const auto& p : pts) {
          const auto idx = partition_index(c, p.x1, p.x2, m);
          direct += (idx.j == j && idx.k == k);
        }
        CHECK(counts.count(m, j, k) == direct);
      }
    }
  }
  for_each_parent(3, [&](int m, std::int64_t j, std::int64_t k) {
    if (m == 0) return;
    const auto ch = counts.children(m, j, k);
    CHECK(ch[0] + ch[1] + ch[2] + ch[3] == counts.count(m, j, k));
  });
}

TEST_CASE("posterior dirichlet parameters") {
  const TreeParams p{3, 1.0, 1.1};
  const CenteringMeasure c(0, 0);
  CHECK(posterior_dirichlet_params(CountTree(3), p) == prior_dirichlet_params(p));

  // One datum in cell (1,1,1): negative coordinates on both axes.
  const std::vector<PlanePoint> one{{-0.5, -0.5}};
  const auto post = posterior_dirichlet_params(count_data(c, one, 3), p);
  const auto root = post.at(0, 1, 1);
  CHECK(root == std::array<double, 4>{2.0, 1.0, 1.0, 1.0});

  Rng rng(37);
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({rng.normal(), rng.normal()});
  const auto counts = count_data(c, pts, 3);
  const auto q = posterior_dirichlet_params(counts, p);
  for_each_parent(3, [&](int m, std::int64_t j, std::int64_t k) {
    const auto a = q.at(m, j, k);
    const double parent = m == 0 ? static_cast<double>(counts.total())
                                 : static_cast<double>(counts.count(m, j, k));
    CHECK(a[0] + a[1] + a[2] + a[3] ==
          doctest::Approx(4 * p.alpha * rho(m + 1, p.delta) + parent).epsilon(1e-14));
  });
}

TEST_CASE("dirichlet log density") {
  const std::array<double, 4> quarter{0.25, 0.25, 0.25, 0.25};
  CHECK(dirichlet_log_density(quarter, {1, 1, 1, 1}) ==
        doctest::Approx(std::log(6.0)).epsilon(1e-14));

  const std::array<double, 4> y{0.1, 0.2, 0.3, 0.4};
  const std::array<double, 4> a{0.5, 1.5, 2.5, 3.5};
  const std::array<double, 4> yp{0.3, 0.1, 0.4, 0.2};
  const std::array<double, 4> ap{2.5, 0.5, 3.5, 1.5};
  CHECK(dirichlet_log_density(y, a) ==
        doctest::Approx(dirichlet_log_density(yp, ap)).epsilon(1e-14));

  // Gamma(5) / Gamma(2) * (1/2)^1 = 24 / 1 * 0.5 = 12.
  const double oracle = std::log(std::tgamma(5.0) / std::tgamma(2.0) * 0.5);
  CHECK(dirichlet_log_density({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, {2, 1, 1, 1}) ==
        doctest::Approx(oracle).epsilon(1e-13));

  CHECK_THROWS_AS(dirichlet_log_density({0.3, 0.3, 0.3, 0.3}, {1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(dirichlet_log_density(quarter, {1, 0, 1, 1}), DomainError);
  CHECK(dirichlet_log_density_from_logs({std::log(0.1), std::log(0.2), std::log(0.3),
                                         std::log(0.4)},
                                        a) == doctest::Approx(dirichlet_log_density(y, a)));
}

TEST_CASE("sampling a point from a tree lands in a positive-probability cell") {
  Rng rng(41);
  const CenteringMeasure c(1, 1);
  BranchingTree t(2);
  t.set_children(0, 1, 1, {0.0, 0.0, 1.0, 0.0});
  for (int i = 0; i < 200; ++i) {
    const auto p = sample_from_tree(t, c, rng);
    const auto idx = partition_index(c, p.x1, p.x2, 1);
    CHECK(idx.j == 2);
    CHECK(idx.k == 1);
  }
}
