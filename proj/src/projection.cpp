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

#include "pptree/projection.hpp"

#include <cmath>

#include "pptree/error.hpp"

namespace pptree {

namespace {

constexpr double kLogFour = 1.3862943611198906188;
// Densities are evaluated on a lattice of 2^32 directions per turn. The
// lattice absorbs the rounding left by reducing theta + 2pi, so f(theta) and
// f(theta + 2pi) are the same number; the 1.5e-9 rad spacing is far below
// any data resolution.
constexpr double kLatticePerTurn = 4294967296.0;

double lattice_angle(CircularAngle theta) {
  double steps = std::nearbyint(theta.radians() / kTwoPi * kLatticePerTurn);
  if (steps <= 0.0) steps = kLatticePerTurn;
  return kTwoPi * (steps / kLatticePerTurn);
}

}  // namespace

double reduce_angle(double radians) {
  if (!std::isfinite(radians)) throw DomainError("angle must be finite");
  double r = std::fmod(radians, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r;
}

double wrap_difference(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

CircularAngle::CircularAngle(double radians) : value_(reduce_angle(radians)) {}

PlanePoint polar_to_cartesian(CircularAngle theta, double r) {
  if (!(r > 0.0)) throw DomainError("resultant length must be positive");
  return {r * std::cos(theta.radians()), r * std::sin(theta.radians())};
}

Polar cartesian_to_polar(double x1, double x2) {
  if (x1 == 0.0 && x2 == 0.0) throw DomainError("the origin has no direction");
  return {CircularAngle(std::atan2(x2, x1)), std::hypot(x1, x2)};
}

QuadratureGrid::QuadratureGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DomainError("quadrature grid needs at least one node");
  double previous = 0.0;
  for (double r : nodes_) {
    if (!(r > previous) || !std::isfinite(r)) {
      throw DomainError("quadrature nodes must be positive and strictly increasing");
    }
    previous = r;
  }
}

QuadratureGrid QuadratureGrid::uniform(int nodes, double r_max) {
  if (nodes < 1) throw DomainError("quadrature grid needs at least one node");
  if (!(r_max > 0.0)) throw DomainError("quadrature radius must be positive");
  std::vector<double> r(static_cast<std::size_t>(nodes));
  for (int l = 1; l <= nodes; ++l) r[l - 1] = r_max * (static_cast<double>(l) / nodes);
  return QuadratureGrid(std::move(r));
}

QuadratureGrid QuadratureGrid::for_centering(const CenteringMeasure& c, int nodes) {
  return uniform(nodes, c.norm() + 6.0);
}

RadialProfile::RadialProfile(const CenteringMeasure& c, CircularAngle theta,
                             const QuadratureGrid& grid, int depth, RadialRule rule)
    : depth_(depth) {
  const double angle = lattice_angle(theta);
  const double cos_t = std::cos(angle);
  const double sin_t = std::sin(angle);
  const auto r = grid.nodes();
  const std::size_t count = r.size();
  nodes_.reserve(count);
  for (std::size_t l = 0; l < count; ++l) {
    const double below = l == 0 ? 0.0 : r[l - 1];
    double width = r[l] - below;
    if (rule == RadialRule::Trapezoid) {
      const double above = l + 1 < count ? r[l + 1] - r[l] : 0.0;
      width = 0.5 * (width + above);
    }
    const double x1 = r[l] * cos_t;
    const double x2 = r[l] * sin_t;
    nodes_.push_back({cell_from_probability(std_normal_cdf(x1 - c.mu1()), depth),
                      cell_from_probability(std_normal_cdf(x2 - c.mu2()), depth),
                      log_density_at(c, x1, x2) + std::log(r[l]) + std::log(width) +
                          depth * kLogFour});
  }
}

double RadialProfile::evaluate(const BranchingTree& t) const {
  if (t.depth() != depth_) throw DomainError("tree depth does not match the radial profile");
  double total = 0.0;
  for (const auto& node : nodes_) {
    total += std::exp(node.log_weight + t.log_path_product(node.leaf_j, node.leaf_k));
  }
  return total;
}

double marginal_density(const BranchingTree& t, const CenteringMeasure& c, CircularAngle theta,
                        const QuadratureGrid& grid, RadialRule rule) {
  return RadialProfile(c, theta, grid, t.depth(), rule).evaluate(t);
}

TrigMoments moments_from_components(double a1, double b1) {
  TrigMoments m;
  m.a1 = a1;
  m.b1 = b1;
  m.concentration = std::hypot(a1, b1);
  m.direction_defined = m.concentration >= kUndefinedDirectionThreshold;
  m.mean_direction = CircularAngle(std::atan2(b1, a1));
  return m;
}

std::pair<double, double> trig_moment(std::span<const double> values, int order) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("no density values");
  const double step = kTwoPi / static_cast<double>(n);
  double a = 0.0;
  double b = 0.0;
  for (std::size_t g = 1; g <= n; ++g) {
    const double theta = kTwoPi * (static_cast<double>(g) / static_cast<double>(n));
    a += values[g - 1] * std::cos(order * theta);
    b += values[g - 1] * std::sin(order * theta);
  }
  return {a * step, b * step};
}

TrigMoments trig_moments_from_values(std::span<const double> values) {
  const auto [a, b] = trig_moment(values, 1);
  // Divide by the mass under the same rule so that quadrature error in f
  // cannot push the concentration past one.
  double mass = 0.0;
  for (double v : values) mass += v;
  mass *= kTwoPi / static_cast<double>(values.size());
  if (!(mass > 0.0)) throw DomainError("density values have no mass");
  return moments_from_components(a / mass, b / mass);
}

TrigMoments trig_moments(const std::function<double(CircularAngle)>& density, int n_angles) {
  if (n_angles < 64) throw DomainError("trig_moments needs at least 64 angles");
  std::vector<double> values(static_cast<std::size_t>(n_angles));
  for (int g = 1; g <= n_angles; ++g) {
    values[g - 1] = density(CircularAngle(kTwoPi * (static_cast<double>(g) / n_angles)));
  }
  return trig_moments_from_values(values);
}

TrigMoments sample_moments(std::span<const CircularAngle> angles) {
  if (angles.empty()) throw DomainError("sample_moments needs a nonempty sample");
  double a = 0.0;
  double b = 0.0;
  for (const auto& t : angles) {
    a += std::cos(t.radians());
    b += std::sin(t.radians());
  }
  const double n = static_cast<double>(angles.size());
  return moments_from_components(a / n, b / n);
}

std::vector<double> reporting_grid(int n_angles) {
  if (n_angles < 1) throw DomainError("reporting grid needs at least one angle");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n_angles) + 1);
  grid.push_back(kZeroPlus);
  for (int g = 1; g <= n_angles; ++g) {
    grid.push_back(kTwoPi * (static_cast<double>(g) / n_angles));
  }
  return grid;
}

}  // namespace pptree
