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

#include <cstddef>
#include <span>
#include <vector>

#include "pptree/mcmc.hpp"
#include "pptree/projection.hpp"

namespace pptree {

/// Empirical quantile with linear interpolation between order statistics.
/// Throws DomainError on an empty input or q outside [0, 1].
double empirical_quantile(std::vector<double> values, double q);

struct CredibleInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Pointwise posterior mean and 95% band of the projected density.
struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Summarizes the densities cached on the chain's reporting grid.
DensityEstimate density_estimate(const PosteriorSamples& samples);

/// Re-evaluates every stored tree on an arbitrary grid. Throws ContractError
/// if the samples were loaded without trees.
DensityEstimate density_estimate(const PosteriorSamples& samples, std::span<const double> grid,
                                 int quad_nodes, RadialRule rule = RadialRule::Riemann);

/// Circular median: the sample point minimizing the mean arc distance.
double circular_median(std::span<const double> angles);

/// Linear quantile interval of angles unwrapped into (center - pi,
/// center + pi].
CredibleInterval circular_interval(std::span<const double> angles, double center, double level);

struct MomentPosterior {
  /// Per-draw mean direction in (0, 2pi] and concentration.
  std::vector<double> mean_direction;
  std::vector<double> concentration;
  std::size_t undefined_directions = 0;
  double direction_median = 0.0;
  /// Endpoints unwrapped around direction_median; may leave (0, 2pi].
  CredibleInterval direction_ci;
  CredibleInterval concentration_ci;
};

/// Trigonometric moments of every stored draw, from the cached grid.
MomentPosterior moment_posterior(const PosteriorSamples& samples);
MomentPosterior moment_posterior_from_draws(std::vector<double> directions,
                                            std::vector<double> concentrations);

struct DirectionDifference {
  /// nu_A - nu_B per paired draw, in (-pi, pi].
  std::vector<double> draws;
  CredibleInterval ci;
  /// Fraction of paired draws with nu_A > nu_B.
  double prob_greater = 0.0;
};

/// Pairs draws by position; uses the shorter of the two chains.
DirectionDifference direction_difference(const MomentPosterior& a, const MomentPosterior& b);

/// Densities at or below this floor are treated as degenerate for CPO.
inline constexpr double kDensityFloor = 1e-300;

struct FitScore {
  std::vector<double> cpo;
  double lpml = 0.0;
  /// Data indices where some draw had density below kDensityFloor.
  std::vector<std::size_t> degenerate;
};

/// Harmonic-mean CPO from a draws x data matrix of densities.
FitScore lpml_from_densities(std::span<const std::vector<double>> per_draw);
FitScore lpml(const PosteriorSamples& samples);

struct BayesFactor {
  double bf10 = 1.0;
  double log_numerator = 0.0;
  double log_denominator = 0.0;
};

/// Savage-Dickey ratio for H0: every Y = 1/4. The posterior density at the
/// null is the Rao-Blackwellized average over draws of the conditional
/// Dirichlet densities given each draw's cell counts. Throws ContractError
/// if alpha was sampled.
BayesFactor savage_dickey_bf(const PosteriorSamples& samples);

/// Same ratio from per-draw cell counts under fixed tree parameters.
BayesFactor savage_dickey_bf(const TreeParams& params, std::span<const CountTree> draw_counts);

/// Cell counts of the augmented data (r_i cos theta_i, r_i sin theta_i) of
/// one stored draw, partitioned under that draw's centering location.
CountTree draw_counts(const PosteriorSamples& samples, const StoredDraw& draw);

/// log of the prior density of the whole tree at Y = 1/4.
double log_null_density(const DirichletParams& params);

}  // namespace pptree
