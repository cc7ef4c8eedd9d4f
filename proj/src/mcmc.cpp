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

#include "pptree/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pptree/error.hpp"

namespace pptree {

namespace {

double log_target_at(const BranchingTree& t, const CenteringMeasure& c, double cos_t,
                     double sin_t, double r) {
  const double x1 = r * cos_t;
  const double x2 = r * sin_t;
  const int depth = t.depth();
  const std::int64_t j = cell_from_probability(std_normal_cdf(x1 - c.mu1()), depth);
  const std::int64_t k = cell_from_probability(std_normal_cdf(x2 - c.mu2()), depth);
  return t.log_path_product(j, k) + log_density_at(c, x1, x2) + std::log(r);
}

// log of the MH ratio for a Ga(kappa, kappa / current) proposal.
double log_mh_ratio(double log_target_proposed, double log_target_current, double current,
                    double proposed, double kappa) {
  return log_target_proposed - log_target_current +
         gamma_log_density(current, kappa, kappa / proposed) -
         gamma_log_density(proposed, kappa, kappa / current);
}

}  // namespace

void McmcConfig::validate() const {
  if (burn_in < 0) throw DomainError("burn-in must be nonnegative");
  if (iterations <= burn_in) throw DomainError("iterations must exceed burn-in");
  if (thin < 1) throw DomainError("thin must be >= 1");
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(kappa_alpha > 0.0)) throw DomainError("kappa_alpha must be positive");
  if (quad_nodes < 1) throw DomainError("quadrature needs at least one node");
  if (grid_angles < 64) throw DomainError("reporting grid needs at least 64 angles");
  if (alpha_prior && !(alpha_prior->shape > 0.0 && alpha_prior->rate > 0.0)) {
    throw DomainError("alpha hyper-prior parameters must be positive");
  }
  if (mu_prior && (!std::isfinite(mu_prior->mean) || !(mu_prior->precision > 0.0))) {
    throw DomainError("mu hyper-prior needs a finite mean and positive precision");
  }
}

std::size_t McmcConfig::stored_draws() const {
  return static_cast<std::size_t>((iterations - burn_in) / thin);
}

double gamma_log_density(double x, double shape, double rate) {
  if (!(x > 0.0)) return -INFINITY;
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double resultant_log_target(const BranchingTree& t, const CenteringMeasure& c, double theta,
                            double r) {
  if (!(r > 0.0)) throw DomainError("resultant length must be positive");
  return log_target_at(t, c, std::cos(theta), std::sin(theta), r);
}

double resultant_acceptance_probability(const BranchingTree& t, const CenteringMeasure& c,
                                        double theta, double current, double proposed,
                                        double kappa) {
  const double log_ratio =
      log_mh_ratio(resultant_log_target(t, c, theta, proposed),
                   resultant_log_target(t, c, theta, current), current, proposed, kappa);
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

double alpha_log_target(const BranchingTree& t, const TreeParams& p, double alpha,
                        const GammaPrior& prior) {
  if (!(alpha > 0.0)) return -INFINITY;
  double total = gamma_log_density(alpha, prior.shape, prior.rate);
  for_each_parent(t.depth(), [&](int m, std::int64_t j, std::int64_t k) {
    const double a = alpha * rho(m + 1, p.delta);
    total += dirichlet_log_density_from_logs(t.children_log(m, j, k), {a, a, a, a});
  });
  return total;
}

GibbsSampler::GibbsSampler(std::span<const double> angles, const TreeParams& params,
                           const CenteringMeasure& centering, const McmcConfig& config)
    : angles_(angles.begin(), angles.end()),
      params_(params),
      config_(config),
      rng_(mix_seed(config.seed, 0)) {
  params_.validate();
  config_.validate();
  if (angles_.empty()) throw IngestionError("no observations to fit");
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double a = angles_[i];
    if (!std::isfinite(a) || !(a > 0.0) || a > kTwoPi) {
      throw IngestionError("observation " + std::to_string(i + 1) + " is outside (0, 2pi]");
    }
  }
  const std::size_t n = angles_.size();
  cos_.resize(n);
  sin_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cos_[i] = std::cos(angles_[i]);
    sin_[i] = std::sin(angles_[i]);
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return angles_[a] < angles_[b]; });
  rank_.resize(n);
  datum_rngs_.reserve(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    rank_[order_[rank]] = rank;
    datum_rngs_.emplace_back(mix_seed(config_.seed, rank + 1));
  }

  state_.resultants.assign(n, 1.0);
  state_.accept_r.assign(n, 0);
  state_.alpha = config_.alpha_prior ? config_.alpha_prior->shape / config_.alpha_prior->rate
                                     : params_.alpha;
  state_.mu = config_.mu_prior ? CenteringMeasure(config_.mu_prior->mean, config_.mu_prior->mean)
                               : centering;
  state_.tree = sample_prior_tree(current_params(), rng_);
}

TreeParams GibbsSampler::current_params() const {
  TreeParams p = params_;
  p.alpha = state_.alpha;
  return p;
}

CountTree GibbsSampler::current_counts() const {
  const int depth = params_.depth;
  CountTree counts(depth);
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    const double r = state_.resultants[i];
    counts.add_leaf(
        cell_from_probability(std_normal_cdf(r * cos_[i] - state_.mu.mu1()), depth),
        cell_from_probability(std_normal_cdf(r * sin_[i] - state_.mu.mu2()), depth));
  }
  return counts;
}

DirichletParams GibbsSampler::current_posterior_params() const {
  return posterior_dirichlet_params(current_counts(), current_params());
}

void GibbsSampler::update_tree() { state_.tree = sample_tree(current_posterior_params(), rng_); }

void GibbsSampler::update_resultant(std::size_t i) {
  Rng& rng = datum_rngs_[rank_[i]];
  const double current = state_.resultants[i];
  const double kappa = config_.kappa;
  const double proposed = rng.gamma(kappa, kappa / current);
  const double u = rng.uniform();
  if (!(proposed > 0.0) || !std::isfinite(proposed)) return;
  const double log_ratio =
      log_mh_ratio(log_target_at(state_.tree, state_.mu, cos_[i], sin_[i], proposed),
                   log_target_at(state_.tree, state_.mu, cos_[i], sin_[i], current), current,
                   proposed, kappa);
  if (std::log(u) < log_ratio) {
    state_.resultants[i] = proposed;
    ++state_.accept_r[i];
  }
}

void GibbsSampler::update_resultants() {
  for (std::size_t i : order_) update_resultant(i);
}

void GibbsSampler::update_alpha() {
  if (!config_.alpha_prior) throw ContractError("alpha update requires an alpha hyper-prior");
  const GammaPrior& prior = *config_.alpha_prior;
  const double current = state_.alpha;
  const double kappa = config_.kappa_alpha;
  const double proposed = rng_.gamma(kappa, kappa / current);
  const double u = rng_.uniform();
  if (!(proposed > 0.0) || !std::isfinite(proposed)) return;
  const double log_ratio = log_mh_ratio(alpha_log_target(state_.tree, params_, proposed, prior),
                                        alpha_log_target(state_.tree, params_, current, prior),
                                        current, proposed, kappa);
  if (std::log(u) < log_ratio) {
    state_.alpha = proposed;
    ++state_.accept_alpha;
  }
}

void GibbsSampler::update_mu() {
  if (!config_.mu_prior) throw ContractError("mu update requires a mu hyper-prior");
  const NormalPrior& prior = *config_.mu_prior;
  double sum1 = 0.0;
  double sum2 = 0.0;
  for (std::size_t i : order_) {
    sum1 += state_.resultants[i] * cos_[i];
    sum2 += state_.resultants[i] * sin_[i];
  }
  const double precision = static_cast<double>(angles_.size()) + prior.precision;
  const double sd = 1.0 / std::sqrt(precision);
  const double m1 = (sum1 + prior.precision * prior.mean) / precision;
  const double m2 = (sum2 + prior.precision * prior.mean) / precision;
  const double mu1 = rng_.normal(m1, sd);
  const double mu2 = rng_.normal(m2, sd);
  state_.mu = CenteringMeasure(mu1, mu2);
}

void GibbsSampler::sweep() {
  update_tree();
  update_resultants();
  if (config_.alpha_prior) update_alpha();
  if (config_.mu_prior) update_mu();
  ++state_.sweeps;
  for (double r : state_.resultants) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error("latent resultant left (0, inf)");
  }
}

void GibbsSampler::set_observation(std::size_t i, double theta, double r) {
  if (i >= angles_.size()) throw DomainError("observation index out of range");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("resultant length must be positive");
  angles_[i] = reduce_angle(theta);
  cos_[i] = std::cos(angles_[i]);
  sin_[i] = std::sin(angles_[i]);
  state_.resultants[i] = r;
}

void GibbsSampler::set_tree(BranchingTree t) {
  if (t.depth() != params_.depth) throw DomainError("tree depth does not match parameters");
  state_.tree = std::move(t);
}

void GibbsSampler::set_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  state_.alpha = alpha;
}

double PosteriorSamples::mean_accept_rate_r() const {
  if (accept_rate_r.empty()) return 0.0;
  return std::accumulate(accept_rate_r.begin(), accept_rate_r.end(), 0.0) /
         static_cast<double>(accept_rate_r.size());
}

namespace {

std::vector<RadialProfile> build_profiles(std::span<const double> angles,
                                          const CenteringMeasure& c, const McmcConfig& config,
                                          int depth) {
  const auto grid = QuadratureGrid::for_centering(c, config.quad_nodes);
  std::vector<RadialProfile> out;
  out.reserve(angles.size());
  for (double a : angles) out.emplace_back(c, CircularAngle(a), grid, depth, config.rule);
  return out;
}

std::vector<double> evaluate_all(const std::vector<RadialProfile>& profiles,
                                 const BranchingTree& t) {
  std::vector<double> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.push_back(p.evaluate(t));
  return out;
}

}  // namespace

PosteriorSamples run_chain(std::span<const double> angles, const TreeParams& params,
                           const CenteringMeasure& centering, const McmcConfig& config) {
  GibbsSampler sampler(angles, params, centering, config);

  PosteriorSamples out;
  out.params = params;
  out.centering = centering;
  out.config = config;
  out.angles.assign(angles.begin(), angles.end());
  out.grid = reporting_grid(config.grid_angles);
  out.draws.reserve(config.stored_draws());

  std::vector<RadialProfile> data_profiles;
  std::vector<RadialProfile> grid_profiles;
  if (!config.mu_prior) {
    data_profiles = build_profiles(out.angles, sampler.state().mu, config, params.depth);
    grid_profiles = build_profiles(out.grid, sampler.state().mu, config, params.depth);
  }

  for (int it = 1; it <= config.iterations; ++it) {
    sampler.sweep();
    if (it <= config.burn_in || (it - config.burn_in) % config.thin != 0) continue;
    const McmcState& s = sampler.state();
    if (config.mu_prior) {
      data_profiles = build_profiles(out.angles, s.mu, config, params.depth);
      grid_profiles = build_profiles(out.grid, s.mu, config, params.depth);
    }
    StoredDraw draw;
    draw.iteration = it;
    draw.alpha = s.alpha;
    draw.mu = s.mu;
    draw.resultants = s.resultants;
    draw.density_at_data = evaluate_all(data_profiles, s.tree);
    draw.density_on_grid = evaluate_all(grid_profiles, s.tree);
    if (config.keep_trees) draw.tree = s.tree;
    out.draws.push_back(std::move(draw));
  }

  const double sweeps = static_cast<double>(config.iterations);
  const McmcState& s = sampler.state();
  out.accept_rate_r.reserve(s.accept_r.size());
  for (auto count : s.accept_r) out.accept_rate_r.push_back(static_cast<double>(count) / sweeps);
  out.accept_rate_alpha = static_cast<double>(s.accept_alpha) / sweeps;
  return out;
}

}  // namespace pptree
