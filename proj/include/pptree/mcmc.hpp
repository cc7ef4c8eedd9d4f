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
#include <optional>
#include <span>
#include <vector>

#include "pptree/centering.hpp"
#include "pptree/projection.hpp"
#include "pptree/random.hpp"
#include "pptree/tree.hpp"

namespace pptree {

/// Ga(shape, rate) hyper-prior on alpha.
struct GammaPrior {
  double shape = 1.0;
  double rate = 2.0;
};

/// N(mean, precision) hyper-prior shared by both coordinates of mu.
struct NormalPrior {
  double mean = 0.0;
  double precision = 1.0;
};

struct McmcConfig {
  int iterations = 10000;
  int burn_in = 1000;
  int thin = 5;
  /// Shape of the gamma random-walk proposal for the latent resultants.
  double kappa = 0.5;
  std::optional<GammaPrior> alpha_prior;
  std::optional<NormalPrior> mu_prior;
  double kappa_alpha = 0.5;
  std::uint64_t seed = 1;
  /// Radial quadrature nodes for cached density evaluations.
  int quad_nodes = 100;
  /// Angles on the cached reporting grid (excluding the 0+ point).
  int grid_angles = 128;
  RadialRule rule = RadialRule::Riemann;
  /// Keep every stored draw's tree in memory.
  bool keep_trees = true;

  /// Throws DomainError on inconsistent settings.
  void validate() const;
  /// floor((iterations - burn_in) / thin)
  std::size_t stored_draws() const;
};

struct McmcState {
  BranchingTree tree;
  std::vector<double> resultants;
  double alpha = 1.0;
  CenteringMeasure mu;
  std::vector<std::int64_t> accept_r;
  std::int64_t accept_alpha = 0;
  std::int64_t sweeps = 0;
};

double gamma_log_density(double x, double shape, double rate);

/// log f(r | Y, theta) up to a constant: log prod_m Y + log f0 + log r.
/// Throws DomainError if r <= 0.
double resultant_log_target(const BranchingTree& t, const CenteringMeasure& c, double theta,
                            double r);

/// MH acceptance probability of moving the resultant from `current` to
/// `proposed` under the Ga(kappa, kappa / r) random walk, capped at 1.
double resultant_acceptance_probability(const BranchingTree& t, const CenteringMeasure& c,
                                        double theta, double current, double proposed,
                                        double kappa);

/// log f(alpha | Y) up to a constant: Dirichlet terms of every parent plus
/// the gamma hyper-prior.
double alpha_log_target(const BranchingTree& t, const TreeParams& p, double alpha,
                        const GammaPrior& prior);

/// Data-augmented Gibbs sampler. Per-datum state is kept in input order;
/// resultant updates run in sorted-angle order and each datum owns an RNG
/// stream keyed by its sorted rank, so permuting the input permutes the
/// per-datum output and leaves tree, alpha and mu draws unchanged.
class GibbsSampler {
 public:
  /// Throws IngestionError if angles is empty or any angle is outside
  /// (0, 2pi].
  GibbsSampler(std::span<const double> angles, const TreeParams& params,
               const CenteringMeasure& centering, const McmcConfig& config);

  const McmcState& state() const noexcept { return state_; }
  std::span<const double> angles() const noexcept { return angles_; }
  const TreeParams& params() const noexcept { return params_; }
  const McmcConfig& config() const noexcept { return config_; }
  /// Tree parameters with alpha set to the current draw.
  TreeParams current_params() const;

  CountTree current_counts() const;
  DirichletParams current_posterior_params() const;

  void update_tree();
  void update_resultant(std::size_t i);
  void update_resultants();
  /// Throws ContractError without an alpha hyper-prior.
  void update_alpha();
  /// Throws ContractError without a mu hyper-prior.
  void update_mu();
  /// One full sweep: tree, resultants, then the optional alpha and mu steps.
  void sweep();

  /// Replaces observation i (used by prior-predictive checks).
  void set_observation(std::size_t i, double theta, double r);
  void set_tree(BranchingTree t);
  /// Throws DomainError unless alpha > 0.
  void set_alpha(double alpha);

  Rng& rng() noexcept { return rng_; }

 private:
  std::vector<double> angles_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<Rng> datum_rngs_;
  TreeParams params_;
  McmcConfig config_;
  Rng rng_;
  McmcState state_;
};

/// One thinned post-burn-in draw with its cached density evaluations.
struct StoredDraw {
  int iteration = 0;
  double alpha = 0.0;
  CenteringMeasure mu;
  std::vector<double> resultants;
  /// f(theta_i) for every observed angle, input order.
  std::vector<double> density_at_data;
  /// f on the reporting grid.
  std::vector<double> density_on_grid;
  std::optional<BranchingTree> tree;
};

struct PosteriorSamples {
  TreeParams params;
  /// Initial (or fixed) centering location.
  CenteringMeasure centering;
  McmcConfig config;
  std::vector<double> angles;
  std::vector<double> grid;
  std::vector<StoredDraw> draws;
  std::vector<double> accept_rate_r;
  double accept_rate_alpha = 0.0;

  bool alpha_random() const noexcept { return config.alpha_prior.has_value(); }
  bool mu_random() const noexcept { return config.mu_prior.has_value(); }
  bool has_trees() const noexcept { return !draws.empty() && draws.front().tree.has_value(); }
  double mean_accept_rate_r() const;
};

/// Runs a full chain: r_i = 1, tree drawn from the prior, alpha at its fixed
/// value (or the hyper-prior mean), mu at its fixed value (or the
/// hyper-prior mean). Deterministic given config.seed.
PosteriorSamples run_chain(std::span<const double> angles, const TreeParams& params,
                           const CenteringMeasure& centering, const McmcConfig& config);

}  // namespace pptree
