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

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pptree/centering.hpp"
#include "pptree/random.hpp"

namespace pptree {

/// Hyper-parameters of a finite bivariate Polya tree: depth M, precision
/// alpha and the exponent delta of rho(m) = m^delta.
struct TreeParams {
  int depth = 4;
  double alpha = 1.0;
  double delta = 1.1;

  /// Throws DomainError unless depth >= 1, alpha > 0 and delta > 1.
  void validate() const;
};

double rho(int level, double delta);

/// Number of cells along one axis at a level, 2^m.
inline std::int64_t cells_per_axis(int level) { return std::int64_t{1} << level; }

/// Dense per-level square grids indexed by 1-based (j, k). Level m holds
/// 2^m x 2^m entries, stored row-major in j.
template <typename T>
class LevelGrids {
 public:
  LevelGrids() = default;
  LevelGrids(int depth, T fill) : depth_(depth) {
    levels_.reserve(static_cast<std::size_t>(depth));
    for (int m = 1; m <= depth; ++m) {
      const auto side = static_cast<std::size_t>(cells_per_axis(m));
      levels_.emplace_back(side * side, fill);
    }
  }

  int depth() const noexcept { return depth_; }

  T& at(int m, std::int64_t j, std::int64_t k) { return levels_[m - 1][offset(m, j, k)]; }
  const T& at(int m, std::int64_t j, std::int64_t k) const {
    return levels_[m - 1][offset(m, j, k)];
  }

  std::span<const T> level(int m) const { return levels_[m - 1]; }
  std::span<T> level(int m) { return levels_[m - 1]; }

  friend bool operator==(const LevelGrids&, const LevelGrids&) = default;

 private:
  static std::size_t offset(int m, std::int64_t j, std::int64_t k) {
    return static_cast<std::size_t>((j - 1) * cells_per_axis(m) + (k - 1));
  }

  int depth_ = 0;
  std::vector<std::vector<T>> levels_;
};

/// The four children of parent (m, j, k), in the order
/// (2j-1,2k-1), (2j-1,2k), (2j,2k-1), (2j,2k) at level m+1.
std::array<std::pair<std::int64_t, std::int64_t>, 4> child_cells(std::int64_t j, std::int64_t k);

/// Branching probabilities Y_{m,j,k} for m = 1..M. The level-0 root is
/// implicit: its children are the four level-1 cells. Log values are kept
/// alongside so that density products never leave log space.
class BranchingTree {
 public:
  BranchingTree() = default;
  /// A tree of the given depth with every Y = 1/4.
  explicit BranchingTree(int depth);

  static BranchingTree uniform(int depth) { return BranchingTree(depth); }

  int depth() const noexcept { return probs_.depth(); }

  double branch(int m, std::int64_t j, std::int64_t k) const { return probs_.at(m, j, k); }
  double log_branch(int m, std::int64_t j, std::int64_t k) const { return logs_.at(m, j, k); }
  std::span<const double> level(int m) const { return probs_.level(m); }

  /// Children probabilities of parent (m, j, k); m ranges over 0..M-1.
  std::array<double, 4> children(int parent_level, std::int64_t j, std::int64_t k) const;
  std::array<double, 4> children_log(int parent_level, std::int64_t j, std::int64_t k) const;
  /// Replaces the children of a parent. Throws DomainError if the values are
  /// not a probability vector (within 1e-12).
  void set_children(int parent_level, std::int64_t j, std::int64_t k,
                    const std::array<double, 4>& y);
  /// As set_children, but from log-probabilities (assumed normalized).
  void set_children_log(int parent_level, std::int64_t j, std::int64_t k,
                        const std::array<double, 4>& log_y);

  /// F(B_{m,j,k}): product of the branching probabilities on the path to
  /// the root. Throws DomainError for an index outside the tree.
  double set_probability(const PartitionIndex& idx) const;

  /// Sum of log Y over levels 1..M along the ancestors of the level-M cell
  /// (leaf_j, leaf_k).
  double log_path_product(std::int64_t leaf_j, std::int64_t leaf_k) const;

  friend bool operator==(const BranchingTree& a, const BranchingTree& b) {
    return a.probs_ == b.probs_;
  }

 private:
  LevelGrids<double> probs_;
  LevelGrids<double> logs_;
};

/// Counts N_{m,j,k} of points in each partition cell.
class CountTree {
 public:
  CountTree() = default;
  explicit CountTree(int depth) : counts_(depth, 0) {}

  int depth() const noexcept { return counts_.depth(); }
  std::int64_t count(int m, std::int64_t j, std::int64_t k) const { return counts_.at(m, j, k); }
  std::span<const std::int64_t> level(int m) const { return counts_.level(m); }
  std::int64_t total() const noexcept { return total_; }

  /// Children counts of parent (m, j, k), m in 0..M-1, child order as in
  /// child_cells.
  std::array<std::int64_t, 4> children(int parent_level, std::int64_t j, std::int64_t k) const;

  /// Adds one point whose level-M cell is (leaf_j, leaf_k).
  void add_leaf(std::int64_t leaf_j, std::int64_t leaf_k);

  friend bool operator==(const CountTree&, const CountTree&) = default;

 private:
  LevelGrids<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Per-parent Dirichlet parameter quadruples, indexed like a tree one level
/// shallower: parent level m in 0..M-1 holds 4^m quadruples.
class DirichletParams {
 public:
  explicit DirichletParams(int depth);

  int depth() const noexcept { return depth_; }
  const std::array<double, 4>& at(int parent_level, std::int64_t j, std::int64_t k) const;
  std::array<double, 4>& at(int parent_level, std::int64_t j, std::int64_t k);

  friend bool operator==(const DirichletParams&, const DirichletParams&) = default;

 private:
  int depth_;
  std::vector<std::vector<std::array<double, 4>>> parents_;
};

/// Calls fn(m, j, k) for every parent (m, j, k), m = 0..depth-1.
template <typename Fn>
void for_each_parent(int depth, Fn&& fn) {
  for (int m = 0; m < depth; ++m) {
    const std::int64_t side = cells_per_axis(m);
    for (std::int64_t j = 1; j <= side; ++j) {
      for (std::int64_t k = 1; k <= side; ++k) fn(m, j, k);
    }
  }
}

/// Prior parameters: every parent at level m gets alpha * rho(m+1) * (1,1,1,1).
DirichletParams prior_dirichlet_params(const TreeParams& p);
DirichletParams posterior_dirichlet_params(const CountTree& counts, const TreeParams& p);

/// Draws each parent's children independently from the given parameters.
BranchingTree sample_tree(const DirichletParams& params, Rng& rng);
BranchingTree sample_prior_tree(const TreeParams& p, Rng& rng);

double log_joint_density(const BranchingTree& t, const CenteringMeasure& c, double x1, double x2);
double joint_density(const BranchingTree& t, const CenteringMeasure& c, double x1, double x2);

struct PlanePoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

CountTree count_data(const CenteringMeasure& c, std::span<const PlanePoint> points, int depth);

/// Log-density of Dirichlet(a) at y on the 4-simplex. Throws DomainError if
/// y is off the simplex by more than 1e-9 or any a is not positive.
double dirichlet_log_density(const std::array<double, 4>& y, const std::array<double, 4>& a);

/// Same density from log-probabilities assumed to be normalized. Used where
/// branching probabilities may round to 0 or 1 in linear space.
double dirichlet_log_density_from_logs(const std::array<double, 4>& log_y,
                                       const std::array<double, 4>& a);

/// One draw from the joint density of the tree: pick a level-M cell by
/// descending the tree, then draw from the centering measure restricted to
/// that cell.
PlanePoint sample_from_tree(const BranchingTree& t, const CenteringMeasure& c, Rng& rng);

}  // namespace pptree
