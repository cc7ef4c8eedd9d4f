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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pptree/centering.hpp"
#include "pptree/tree.hpp"

namespace pptree {

/// An angle reduced into (0, 2pi]. Zero maps to 2pi.
class CircularAngle {
 public:
  CircularAngle() = default;
  explicit CircularAngle(double radians);

  double radians() const noexcept { return value_; }

  friend bool operator==(const CircularAngle&, const CircularAngle&) = default;

 private:
  double value_ = kTwoPi;
};

/// Reduces any finite angle into (0, 2pi].
double reduce_angle(double radians);

/// Maps an angle difference into (-pi, pi].
double wrap_difference(double radians);

struct Polar {
  CircularAngle theta;
  double r = 0.0;
};

/// Throws DomainError if r <= 0.
PlanePoint polar_to_cartesian(CircularAngle theta, double r);
/// Throws DomainError at the origin.
Polar cartesian_to_polar(double x1, double x2);

/// Radial nodes 0 = r(0) < r(1) < ... < r(L) = r_max. Only r(1)..r(L) are
/// stored; r(0) = 0 is implicit.
class QuadratureGrid {
 public:
  /// Throws DomainError unless nodes are positive and strictly increasing.
  explicit QuadratureGrid(std::vector<double> nodes);

  /// L equally spaced nodes ending at r_max.
  static QuadratureGrid uniform(int nodes, double r_max);
  /// Default grid for a centering measure: r_max = |mu| + 6.
  static QuadratureGrid for_centering(const CenteringMeasure& c, int nodes = 100);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double r_max() const noexcept { return nodes_.back(); }
  std::span<const double> nodes() const noexcept { return nodes_; }

 private:
  std::vector<double> nodes_;
};

/// Radial sum used to marginalize the joint density.
enum class RadialRule {
  /// sum_l f(r_l) r_l (r_l - r_{l-1}); the default.
  Riemann,
  /// Trapezoid rule including the r = 0 end.
  Trapezoid,
};

/// Precomputed radial ray for one angle: the level-M cell and the log weight
/// (centering density, Jacobian and node width) of every quadrature node.
/// Evaluating a tree along the ray is then a table walk, which is what makes
/// caching densities for every MCMC draw affordable.
class RadialProfile {
 public:
  RadialProfile(const CenteringMeasure& c, CircularAngle theta, const QuadratureGrid& grid,
                int depth, RadialRule rule = RadialRule::Riemann);

  double evaluate(const BranchingTree& t) const;

 private:
  struct Node {
    std::int64_t leaf_j;
    std::int64_t leaf_k;
    double log_weight;
  };
  int depth_;
  std::vector<Node> nodes_;
};

/// Projected density f(theta) of the tree by radial quadrature.
double marginal_density(const BranchingTree& t, const CenteringMeasure& c, CircularAngle theta,
                        const QuadratureGrid& grid, RadialRule rule = RadialRule::Riemann);

/// Concentration below which the mean direction is reported as undefined.
inline constexpr double kUndefinedDirectionThreshold = 1e-4;

struct TrigMoments {
  double a1 = 0.0;
  double b1 = 0.0;
  CircularAngle mean_direction;
  double concentration = 0.0;
  bool direction_defined = false;
};

TrigMoments moments_from_components(double a1, double b1);

/// First trigonometric moment of a density on (0, 2pi], integrated on
/// n_angles equally spaced nodes and divided by the integrated mass.
/// Throws DomainError if n_angles < 64.
TrigMoments trig_moments(const std::function<double(CircularAngle)>& density, int n_angles);

/// As trig_moments, from density values already evaluated at 2pi g / N for
/// g = 1..N.
TrigMoments trig_moments_from_values(std::span<const double> values);

/// p-th trigonometric moment (a_p, b_p) from values on the same uniform grid.
std::pair<double, double> trig_moment(std::span<const double> values, int order);

/// Empirical moments of a sample. Throws DomainError if empty.
TrigMoments sample_moments(std::span<const CircularAngle> angles);

/// Stand-in for theta -> 0+ on reporting grids. It lies in (0, 2pi] and is
/// evaluated at the same lattice point as 2pi.
inline constexpr double kZeroPlus = 1e-12;

/// Reporting grid of n_angles + 1 points: kZeroPlus followed by 2pi g / N for
/// g = 1..N. The first and last points describe the same direction.
std::vector<double> reporting_grid(int n_angles);

}  // namespace pptree
