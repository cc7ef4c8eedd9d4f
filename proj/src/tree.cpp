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

#include "pptree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pptree/error.hpp"

namespace pptree {

namespace {

constexpr double kLogFour = 1.3862943611198906188;

std::int64_t parent_of(std::int64_t index) { return (index + 1) / 2; }

void check_parent(int parent_level, std::int64_t j, std::int64_t k, int depth) {
  const std::int64_t side = cells_per_axis(parent_level);
  if (parent_level < 0 || parent_level >= depth || j < 1 || j > side || k < 1 || k > side) {
    throw DomainError("parent index (" + std::to_string(parent_level) + "," + std::to_string(j) +
                      "," + std::to_string(k) + ") outside a depth-" + std::to_string(depth) +
                      " tree");
  }
}

}  // namespace

void TreeParams::validate() const {
  if (depth < 1) throw DomainError("tree depth must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (!(delta > 1.0) || !std::isfinite(delta)) throw DomainError("delta must exceed 1");
}

double rho(int level, double delta) { return std::pow(static_cast<double>(level), delta); }

std::array<std::pair<std::int64_t, std::int64_t>, 4> child_cells(std::int64_t j, std::int64_t k) {
  return {{{2 * j - 1, 2 * k - 1}, {2 * j - 1, 2 * k}, {2 * j, 2 * k - 1}, {2 * j, 2 * k}}};
}

BranchingTree::BranchingTree(int depth)
    : probs_(depth, 0.25), logs_(depth, -kLogFour) {
  if (depth < 1) throw DomainError("tree depth must be >= 1");
}

std::array<double, 4> BranchingTree::children(int parent_level, std::int64_t j,
                                              std::int64_t k) const {
  check_parent(parent_level, j, k, depth());
  std::array<double, 4> out{};
  const auto cells = child_cells(j, k);
  for (std::size_t c = 0; c < 4; ++c) {
    out[c] = probs_.at(parent_level + 1, cells[c].first, cells[c].second);
  }
  return out;
}

std::array<double, 4> BranchingTree::children_log(int parent_level, std::int64_t j,
                                                  std::int64_t k) const {
  check_parent(parent_level, j, k, depth());
  std::array<double, 4> out{};
  const auto cells = child_cells(j, k);
  for (std::size_t c = 0; c < 4; ++c) {
    out[c] = logs_.at(parent_level + 1, cells[c].first, cells[c].second);
  }
  return out;
}

void BranchingTree::set_children(int parent_level, std::int64_t j, std::int64_t k,
                                 const std::array<double, 4>& y) {
  check_parent(parent_level, j, k, depth());
  double total = 0.0;
  for (double v : y) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("branching probability outside [0, 1]");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("children probabilities must sum to 1");
  const auto cells = child_cells(j, k);
  for (std::size_t c = 0; c < 4; ++c) {
    probs_.at(parent_level + 1, cells[c].first, cells[c].second) = y[c];
    logs_.at(parent_level + 1, cells[c].first, cells[c].second) = std::log(y[c]);
  }
}

void BranchingTree::set_children_log(int parent_level, std::int64_t j, std::int64_t k,
                                     const std::array<double, 4>& log_y) {
  check_parent(parent_level, j, k, depth());
  const auto cells = child_cells(j, k);
  for (std::size_t c = 0; c < 4; ++c) {
    probs_.at(parent_level + 1, cells[c].first, cells[c].second) = std::exp(log_y[c]);
    logs_.at(parent_level + 1, cells[c].first, cells[c].second) = log_y[c];
  }
}

double BranchingTree::set_probability(const PartitionIndex& idx) const {
  const std::int64_t side = cells_per_axis(idx.level);
  if (idx.level < 1 || idx.level > depth() || idx.j < 1 || idx.j > side || idx.k < 1 ||
      idx.k > side) {
    throw DomainError("partition index outside the tree");
  }
  double product = 1.0;
  std::int64_t j = idx.j;
  std::int64_t k = idx.k;
  for (int m = idx.level; m >= 1; --m) {
    product *= probs_.at(m, j, k);
    j = parent_of(j);
    k = parent_of(k);
  }
  return product;
}

double BranchingTree::log_path_product(std::int64_t leaf_j, std::int64_t leaf_k) const {
  double total = 0.0;
  for (int m = depth(); m >= 1; --m) {
    total += logs_.at(m, leaf_j, leaf_k);
    leaf_j = parent_of(leaf_j);
    leaf_k = parent_of(leaf_k);
  }
  return total;
}

std::array<std::int64_t, 4> CountTree::children(int parent_level, std::int64_t j,
                                                std::int64_t k) const {
  check_parent(parent_level, j, k, depth());
  std::array<std::int64_t, 4> out{};
  const auto cells = child_cells(j, k);
  for (std::size_t c = 0; c < 4; ++c) {
    out[c] = counts_.at(parent_level + 1, cells[c].first, cells[c].second);
  }
  return out;
}

void CountTree::add_leaf(std::int64_t leaf_j, std::int64_t leaf_k) {
  for (int m = depth(); m >= 1; --m) {
    ++counts_.at(m, leaf_j, leaf_k);
    leaf_j = parent_of(leaf_j);
    leaf_k = parent_of(leaf_k);
  }
  ++total_;
}

DirichletParams::DirichletParams(int depth) : depth_(depth) {
  parents_.reserve(static_cast<std::size_t>(depth));
  for (int m = 0; m < depth; ++m) {
    const auto side = static_cast<std::size_t>(cells_per_axis(m));
    parents_.emplace_back(side * side, std::array<double, 4>{});
  }
}

const std::array<double, 4>& DirichletParams::at(int parent_level, std::int64_t j,
                                                 std::int64_t k) const {
  check_parent(parent_level, j, k, depth_);
  return parents_[parent_level][static_cast<std::size_t>((j - 1) * cells_per_axis(parent_level) +
                                                         (k - 1))];
}

std::array<double, 4>& DirichletParams::at(int parent_level, std::int64_t j, std::int64_t k) {
  check_parent(parent_level, j, k, depth_);
  return parents_[parent_level][static_cast<std::size_t>((j - 1) * cells_per_axis(parent_level) +
                                                         (k - 1))];
}

DirichletParams prior_dirichlet_params(const TreeParams& p) {
  p.validate();
  DirichletParams out(p.depth);
  for_each_parent(p.depth, [&](int m, std::int64_t j, std::int64_t k) {
    const double a = p.alpha * rho(m + 1, p.delta);
    out.at(m, j, k) = {a, a, a, a};
  });
  return out;
}

DirichletParams posterior_dirichlet_params(const CountTree& counts, const TreeParams& p) {
  p.validate();
  if (counts.depth() != p.depth) throw DomainError("count tree depth does not match parameters");
  DirichletParams out(p.depth);
  for_each_parent(p.depth, [&](int m, std::int64_t j, std::int64_t k) {
    const double a = p.alpha * rho(m + 1, p.delta);
    const auto n = counts.children(m, j, k);
    out.at(m, j, k) = {a + static_cast<double>(n[0]), a + static_cast<double>(n[1]),
                       a + static_cast<double>(n[2]), a + static_cast<double>(n[3])};
  });
  return out;
}

BranchingTree sample_tree(const DirichletParams& params, Rng& rng) {
  BranchingTree tree(params.depth());
  for_each_parent(params.depth(), [&](int m, std::int64_t j, std::int64_t k) {
    tree.set_children_log(m, j, k, rng.log_dirichlet4(params.at(m, j, k)));
  });
  return tree;
}

BranchingTree sample_prior_tree(const TreeParams& p, Rng& rng) {
  return sample_tree(prior_dirichlet_params(p), rng);
}

double log_joint_density(const BranchingTree& t, const CenteringMeasure& c, double x1,
                         double x2) {
  const int depth = t.depth();
  const std::int64_t j = cell_from_probability(std_normal_cdf(x1 - c.mu1()), depth);
  const std::int64_t k = cell_from_probability(std_normal_cdf(x2 - c.mu2()), depth);
  return t.log_path_product(j, k) + depth * kLogFour + log_density_at(c, x1, x2);
}

double joint_density(const BranchingTree& t, const CenteringMeasure& c, double x1, double x2) {
  return std::exp(log_joint_density(t, c, x1, x2));
}

CountTree count_data(const CenteringMeasure& c, std::span<const PlanePoint> points, int depth) {
  CountTree counts(depth);
  for (const auto& pt : points) {
    counts.add_leaf(cell_from_probability(std_normal_cdf(pt.x1 - c.mu1()), depth),
                    cell_from_probability(std_normal_cdf(pt.x2 - c.mu2()), depth));
  }
  return counts;
}

double dirichlet_log_density(const std::array<double, 4>& y, const std::array<double, 4>& a) {
  double total = 0.0;
  double a_total = 0.0;
  double value = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(a[i] > 0.0)) throw DomainError("Dirichlet parameters must be positive");
    if (!(y[i] > 0.0 && y[i] < 1.0)) throw DomainError("point is not in the open simplex");
    total += y[i];
    a_total += a[i];
    value += (a[i] - 1.0) * std::log(y[i]) - std::lgamma(a[i]);
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("point is not on the simplex");
  return value + std::lgamma(a_total);
}

double dirichlet_log_density_from_logs(const std::array<double, 4>& log_y,
                                       const std::array<double, 4>& a) {
  double a_total = 0.0;
  double value = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(a[i] > 0.0)) throw DomainError("Dirichlet parameters must be positive");
    a_total += a[i];
    value += (a[i] - 1.0) * log_y[i] - std::lgamma(a[i]);
  }
  return value + std::lgamma(a_total);
}

PlanePoint sample_from_tree(const BranchingTree& t, const CenteringMeasure& c, Rng& rng) {
  std::int64_t j = 1;
  std::int64_t k = 1;
  for (int m = 0; m < t.depth(); ++m) {
    const auto y = t.children(m, j, k);
    const auto pick = rng.categorical(y.data(), 4);
    const auto cells = child_cells(j, k);
    j = cells[pick].first;
    k = cells[pick].second;
  }
  const double width = std::ldexp(1.0, -t.depth());
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  const double u1 = std::min((static_cast<double>(j - 1) + rng.uniform()) * width, kBelowOne);
  const double u2 = std::min((static_cast<double>(k - 1) + rng.uniform()) * width, kBelowOne);
  return {c.mu1() + std_normal_quantile(u1), c.mu2() + std_normal_quantile(u2)};
}

}  // namespace pptree
