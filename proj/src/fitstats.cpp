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

#include "pptree/fitstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pptree/error.hpp"

namespace pptree {

namespace {

double log_mean_exp(std::span<const double> values) {
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double total = 0.0;
  for (double v : values) total += std::exp(v - top);
  return top + std::log(total / static_cast<double>(values.size()));
}

DensityEstimate summarize(std::vector<double> grid, const std::vector<std::vector<double>>& rows) {
  DensityEstimate est;
  est.grid = std::move(grid);
  const std::size_t points = est.grid.size();
  est.mean.resize(points);
  est.lower.resize(points);
  est.upper.resize(points);
  std::vector<double> column(rows.size());
  for (std::size_t g = 0; g < points; ++g) {
    for (std::size_t t = 0; t < rows.size(); ++t) column[t] = rows[t][g];
    est.mean[g] = std::accumulate(column.begin(), column.end(), 0.0) /
                  static_cast<double>(column.size());
    est.lower[g] = empirical_quantile(column, 0.025);
    est.upper[g] = empirical_quantile(column, 0.975);
  }
  return est;
}

}  // namespace

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

DensityEstimate density_estimate(const PosteriorSamples& samples) {
  if (samples.draws.empty()) throw DomainError("no stored draws");
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.draws.size());
  for (const auto& d : samples.draws) rows.push_back(d.density_on_grid);
  return summarize(samples.grid, rows);
}

DensityEstimate density_estimate(const PosteriorSamples& samples, std::span<const double> grid,
                                 int quad_nodes, RadialRule rule) {
  if (samples.draws.empty()) throw DomainError("no stored draws");
  if (!samples.has_trees()) throw ContractError("posterior was stored without trees");
  const int depth = samples.params.depth;
  auto build = [&](const CenteringMeasure& c) {
    const auto quad = QuadratureGrid::for_centering(c, quad_nodes);
    std::vector<RadialProfile> profiles;
    profiles.reserve(grid.size());
    for (double a : grid) profiles.emplace_back(c, CircularAngle(a), quad, depth, rule);
    return profiles;
  };
  std::vector<RadialProfile> profiles;
  if (!samples.mu_random()) profiles = build(samples.draws.front().mu);
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.draws.size());
  for (const auto& d : samples.draws) {
    if (samples.mu_random()) profiles = build(d.mu);
    std::vector<double> row;
    row.reserve(grid.size());
    for (const auto& p : profiles) row.push_back(p.evaluate(*d.tree));
    rows.push_back(std::move(row));
  }
  return summarize(std::vector<double>(grid.begin(), grid.end()), rows);
}

double circular_median(std::span<const double> angles) {
  if (angles.empty()) throw DomainError("circular median of an empty sample");
  double best = angles.front();
  double best_cost = std::numeric_limits<double>::infinity();
  for (double candidate : angles) {
    double cost = 0.0;
    for (double a : angles) cost += std::abs(wrap_difference(a - candidate));
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

CredibleInterval circular_interval(std::span<const double> angles, double center, double level) {
  std::vector<double> unwrapped;
  unwrapped.reserve(angles.size());
  for (double a : angles) unwrapped.push_back(center + wrap_difference(a - center));
  const double tail = 0.5 * (1.0 - level);
  return {empirical_quantile(unwrapped, tail), empirical_quantile(unwrapped, 1.0 - tail)};
}

MomentPosterior moment_posterior_from_draws(std::vector<double> directions,
                                            std::vector<double> concentrations) {
  if (directions.empty()) throw DomainError("no stored draws");
  MomentPosterior out;
  out.mean_direction = std::move(directions);
  out.concentration = std::move(concentrations);
  out.direction_median = circular_median(out.mean_direction);
  out.direction_ci = circular_interval(out.mean_direction, out.direction_median, 0.95);
  out.concentration_ci = {empirical_quantile(out.concentration, 0.025),
                          empirical_quantile(out.concentration, 0.975)};
  return out;
}

MomentPosterior moment_posterior(const PosteriorSamples& samples) {
  if (samples.draws.empty()) throw DomainError("no stored draws");
  std::vector<double> directions;
  std::vector<double> concentrations;
  std::size_t undefined = 0;
  for (const auto& d : samples.draws) {
    // Skip the 0+ point; the rest is one full period.
    const std::span<const double> values(d.density_on_grid.data() + 1,
                                         d.density_on_grid.size() - 1);
    const auto m = trig_moments_from_values(values);
    directions.push_back(m.mean_direction.radians());
    concentrations.push_back(m.concentration);
    if (!m.direction_defined) ++undefined;
  }
  auto out = moment_posterior_from_draws(std::move(directions), std::move(concentrations));
  out.undefined_directions = undefined;
  return out;
}

DirectionDifference direction_difference(const MomentPosterior& a, const MomentPosterior& b) {
  const std::size_t n = std::min(a.mean_direction.size(), b.mean_direction.size());
  if (n == 0) throw DomainError("no draws to pair");
  DirectionDifference out;
  out.draws.reserve(n);
  std::size_t greater = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = wrap_difference(a.mean_direction[t] - b.mean_direction[t]);
    out.draws.push_back(d);
    if (d > 0.0) ++greater;
  }
  out.ci = circular_interval(out.draws, circular_median(out.draws), 0.95);
  out.prob_greater = static_cast<double>(greater) / static_cast<double>(n);
  return out;
}

FitScore lpml_from_densities(std::span<const std::vector<double>> per_draw) {
  if (per_draw.empty()) throw DomainError("no stored draws");
  const std::size_t n = per_draw.front().size();
  FitScore score;
  score.cpo.resize(n);
  std::vector<double> neg_log(per_draw.size());
  for (std::size_t i = 0; i < n; ++i) {
    bool degenerate = false;
    for (std::size_t t = 0; t < per_draw.size(); ++t) {
      double f = per_draw[t][i];
      if (!(f > kDensityFloor)) {
        f = kDensityFloor;
        degenerate = true;
      }
      neg_log[t] = -std::log(f);
    }
    if (degenerate) score.degenerate.push_back(i);
    // log CPO_i = -log mean_t (1 / f_t)
    const double log_cpo = -log_mean_exp(neg_log);
    score.cpo[i] = std::exp(log_cpo);
    score.lpml += log_cpo;
  }
  return score;
}

FitScore lpml(const PosteriorSamples& samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.draws.size());
  for (const auto& d : samples.draws) rows.push_back(d.density_at_data);
  return lpml_from_densities(rows);
}

double log_null_density(const DirichletParams& params) {
  constexpr std::array<double, 4> quarter{0.25, 0.25, 0.25, 0.25};
  double total = 0.0;
  for_each_parent(params.depth(), [&](int m, std::int64_t j, std::int64_t k) {
    total += dirichlet_log_density(quarter, params.at(m, j, k));
  });
  return total;
}

CountTree draw_counts(const PosteriorSamples& samples, const StoredDraw& draw) {
  std::vector<PlanePoint> points;
  points.reserve(samples.angles.size());
  for (std::size_t i = 0; i < samples.angles.size(); ++i) {
    const double r = draw.resultants[i];
    points.push_back({r * std::cos(samples.angles[i]), r * std::sin(samples.angles[i])});
  }
  return count_data(draw.mu, points, samples.params.depth);
}

BayesFactor savage_dickey_bf(const TreeParams& params, std::span<const CountTree> counts) {
  if (counts.empty()) throw DomainError("no stored draws");
  BayesFactor bf;
  bf.log_numerator = log_null_density(prior_dirichlet_params(params));
  std::vector<double> log_posterior;
  log_posterior.reserve(counts.size());
  for (const auto& c : counts) {
    log_posterior.push_back(log_null_density(posterior_dirichlet_params(c, params)));
  }
  bf.log_denominator = log_mean_exp(log_posterior);
  bf.bf10 = std::exp(bf.log_numerator - bf.log_denominator);
  return bf;
}

BayesFactor savage_dickey_bf(const PosteriorSamples& samples) {
  if (samples.alpha_random()) {
    throw ContractError(
        "Bayes factor needs a fixed alpha; refit with a fixed --alpha instead of --alpha-prior");
  }
  if (samples.draws.empty()) throw DomainError("no stored draws");
  std::vector<CountTree> counts;
  counts.reserve(samples.draws.size());
  for (const auto& d : samples.draws) counts.push_back(draw_counts(samples, d));
  return savage_dickey_bf(samples.params, counts);
}

}  // namespace pptree
