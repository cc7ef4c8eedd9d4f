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

#include "pptree/pptree.h"

#include <algorithm>
#include <fstream>
#include <new>
#include <numeric>
#include <string>

#include "pptree/data.hpp"
#include "pptree/error.hpp"
#include "pptree/fitstats.hpp"
#include "pptree/mcmc.hpp"
#include "pptree/posterior_io.hpp"

struct ppt_sample {
  pptree::AngleSample sample;
};

struct ppt_posterior {
  pptree::PosteriorSamples samples;
};

namespace {

using namespace pptree;

thread_local std::string g_last_error;

class IoError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

template <typename Fn>
ppt_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return PPT_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return PPT_ERR_PARSE;
  } catch (const IngestionError& e) {
    g_last_error = e.what();
    return PPT_ERR_INGESTION;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return PPT_ERR_DOMAIN;
  } catch (const ContractError& e) {
    g_last_error = e.what();
    return PPT_ERR_CONTRACT;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return PPT_ERR_IO;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return PPT_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PPT_ERR_INTERNAL;
  }
}

template <typename T>
const T& require(const T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

void require_out(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
}

void require_capacity(size_t capacity, size_t needed) {
  if (capacity < needed) {
    throw ArgumentError("buffer holds " + std::to_string(capacity) + " values, " +
                        std::to_string(needed) + " required");
  }
}

TreeParams to_params(const ppt_tree_params& p) {
  TreeParams out{p.depth, p.alpha, p.delta};
  out.validate();
  return out;
}

McmcConfig to_config(const ppt_mcmc_config& c) {
  McmcConfig out;
  out.iterations = c.iterations;
  out.burn_in = c.burn_in;
  out.thin = c.thin;
  out.kappa = c.kappa;
  if (c.alpha_prior_enabled) out.alpha_prior = GammaPrior{c.alpha_prior_shape, c.alpha_prior_rate};
  if (c.mu_prior_enabled) out.mu_prior = NormalPrior{c.mu_prior_mean, c.mu_prior_precision};
  out.kappa_alpha = c.kappa_alpha;
  out.seed = c.seed;
  out.quad_nodes = c.quad_nodes;
  out.grid_angles = c.grid_angles;
  out.rule = c.rule == PPT_RULE_TRAPEZOID ? RadialRule::Trapezoid : RadialRule::Riemann;
  out.validate();
  return out;
}

std::ifstream open_input(const char* path) {
  require_out(path, "path");
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot open '") + path + "'");
  return in;
}

std::ofstream open_output(const char* path) {
  require_out(path, "path");
  std::ofstream out(path);
  if (!out) throw IoError(std::string("cannot write '") + path + "'");
  return out;
}

ppt_sample* wrap(AngleSample s) { return new ppt_sample{std::move(s)}; }

}  // namespace

extern "C" {

const char* ppt_version(void) { return "1.0.0"; }

const char* ppt_last_error(void) { return g_last_error.c_str(); }

const char* ppt_status_string(ppt_status status) {
  switch (status) {
    case PPT_OK: return "ok";
    case PPT_ERR_DOMAIN: return "domain error";
    case PPT_ERR_PARSE: return "parse error";
    case PPT_ERR_INGESTION: return "ingestion error";
    case PPT_ERR_CONTRACT: return "contract violation";
    case PPT_ERR_IO: return "i/o error";
    case PPT_ERR_ARGUMENT: return "invalid argument";
    case PPT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ppt_tree_params_default(ppt_tree_params* params) {
  if (params == nullptr) return;
  const TreeParams d;
  *params = {d.depth, d.alpha, d.delta};
}

void ppt_mcmc_config_default(ppt_mcmc_config* config) {
  if (config == nullptr) return;
  const McmcConfig d;
  const GammaPrior ga;
  const NormalPrior nm;
  *config = {d.iterations, d.burn_in, d.thin,     d.kappa,   0,
             ga.shape,     ga.rate,   0,          nm.mean,   nm.precision,
             d.kappa_alpha, d.seed,   d.quad_nodes, d.grid_angles, PPT_RULE_RIEMANN};
}

void ppt_mixture_spec_default(ppt_mixture_spec* spec) {
  if (spec == nullptr) return;
  const MixtureSpec d;
  for (int c = 0; c < 4; ++c) {
    spec->weights[c] = d.weights[c];
    spec->locations[c][0] = d.locations[c][0];
    spec->locations[c][1] = d.locations[c][1];
  }
}

ppt_status ppt_sample_load(const char* path, ppt_unit unit, ppt_sample** out) {
  return guarded([&] {
    require_out(out, "out");
    auto in = open_input(path);
    const AngleUnit u = unit == PPT_UNIT_DEGREES   ? AngleUnit::Degrees
                        : unit == PPT_UNIT_CLOCK24 ? AngleUnit::Clock24
                                                   : AngleUnit::Radians;
    *out = wrap(load_angles(in, u, path));
  });
}

ppt_status ppt_sample_triunfo(const char* species, ppt_sample** out) {
  return guarded([&] {
    require_out(out, "out");
    require_out(species, "species");
    *out = wrap(triunfo(species));
  });
}

ppt_status ppt_sample_from_radians(const double* angles, size_t n, const char* name,
                                   ppt_sample** out) {
  return guarded([&] {
    require_out(out, "out");
    if (n > 0) require_out(angles, "angles");
    if (n == 0) throw IngestionError("no angles given");
    AngleSample s;
    s.name = name ? name : "";
    for (size_t i = 0; i < n; ++i) s.angles.emplace_back(angles[i]);
    *out = wrap(std::move(s));
  });
}

ppt_status ppt_sample_simulate_mixture(size_t n, const ppt_mixture_spec* spec, uint64_t seed,
                                       ppt_sample** out) {
  return guarded([&] {
    require_out(out, "out");
    MixtureSpec m;
    if (spec != nullptr) {
      for (int c = 0; c < 4; ++c) {
        m.weights[c] = spec->weights[c];
        m.locations[c] = {spec->locations[c][0], spec->locations[c][1]};
      }
    }
    Rng rng(seed);
    *out = wrap(simulate_mixture(n, m, rng));
  });
}

ppt_status ppt_sample_simulate_projected_normal(size_t n, double mu1, double mu2, uint64_t seed,
                                                ppt_sample** out) {
  return guarded([&] {
    require_out(out, "out");
    Rng rng(seed);
    *out = wrap(simulate_projected_normal(n, CenteringMeasure(mu1, mu2), rng));
  });
}

size_t ppt_sample_size(const ppt_sample* sample) {
  return sample ? sample->sample.size() : 0;
}

const char* ppt_sample_name(const ppt_sample* sample) {
  return sample ? sample->sample.name.c_str() : "";
}

ppt_status ppt_sample_angles(const ppt_sample* sample, double* out, size_t capacity) {
  return guarded([&] {
    const auto& s = require(sample, "sample").sample;
    require_out(out, "out");
    require_capacity(capacity, s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = s.angles[i].radians();
  });
}

size_t ppt_sample_warning_count(const ppt_sample* sample) {
  return sample ? sample->sample.warnings.size() : 0;
}

const char* ppt_sample_warning(const ppt_sample* sample, size_t index) {
  if (sample == nullptr || index >= sample->sample.warnings.size()) return "";
  return sample->sample.warnings[index].c_str();
}

ppt_status ppt_sample_save(const ppt_sample* sample, const char* path) {
  return guarded([&] {
    const auto& s = require(sample, "sample").sample;
    auto out = open_output(path);
    write_angles(out, s);
    if (!out) throw IoError(std::string("failed writing '") + path + "'");
  });
}

void ppt_sample_free(ppt_sample* sample) { delete sample; }

ppt_status ppt_reporting_grid(int grid_angles, double* out, size_t capacity) {
  return guarded([&] {
    require_out(out, "out");
    const auto grid = reporting_grid(grid_angles);
    require_capacity(capacity, grid.size());
    std::copy(grid.begin(), grid.end(), out);
  });
}

ppt_status ppt_prior_sim(const ppt_tree_params* params, double mu1, double mu2, size_t paths,
                         int grid_angles, int quad_nodes, uint64_t seed, double* densities,
                         double* mean_directions, double* concentrations,
                         int* direction_defined) {
  return guarded([&] {
    const TreeParams p = to_params(require(params, "params"));
    require_out(densities, "densities");
    if (paths == 0) throw DomainError("need at least one path");
    if (grid_angles < 64) throw DomainError("grid needs at least 64 angles");
    const CenteringMeasure c(mu1, mu2);
    const auto quad = QuadratureGrid::for_centering(c, quad_nodes);
    const auto grid = reporting_grid(grid_angles);
    std::vector<RadialProfile> profiles;
    profiles.reserve(grid.size());
    for (double a : grid) profiles.emplace_back(c, CircularAngle(a), quad, p.depth);
    Rng rng(seed);
    for (size_t path = 0; path < paths; ++path) {
      const auto tree = sample_prior_tree(p, rng);
      double* row = densities + path * grid.size();
      for (size_t g = 0; g < grid.size(); ++g) row[g] = profiles[g].evaluate(tree);
      const auto m = trig_moments_from_values(std::span<const double>(row + 1, grid.size() - 1));
      if (mean_directions) mean_directions[path] = m.mean_direction.radians();
      if (concentrations) concentrations[path] = m.concentration;
      if (direction_defined) direction_defined[path] = m.direction_defined ? 1 : 0;
    }
  });
}

ppt_status ppt_fit(const ppt_sample* sample, const ppt_tree_params* params, double mu1,
                   double mu2, const ppt_mcmc_config* config, ppt_posterior** out) {
  return guarded([&] {
    const auto& s = require(sample, "sample").sample;
    const TreeParams p = to_params(require(params, "params"));
    const McmcConfig c = to_config(require(config, "config"));
    require_out(out, "out");
    const auto angles = s.radians();
    *out = new ppt_posterior{run_chain(angles, p, CenteringMeasure(mu1, mu2), c)};
  });
}

ppt_status ppt_posterior_save(const ppt_posterior* posterior, const char* path,
                              int include_trees) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    auto out = open_output(path);
    save_posterior(out, s, include_trees != 0);
    if (!out) throw IoError(std::string("failed writing '") + path + "'");
  });
}

ppt_status ppt_posterior_load(const char* path, ppt_posterior** out) {
  return guarded([&] {
    require_out(out, "out");
    auto in = open_input(path);
    *out = new ppt_posterior{load_posterior(in)};
  });
}

void ppt_posterior_free(ppt_posterior* posterior) { delete posterior; }

size_t ppt_posterior_draw_count(const ppt_posterior* posterior) {
  return posterior ? posterior->samples.draws.size() : 0;
}

size_t ppt_posterior_data_size(const ppt_posterior* posterior) {
  return posterior ? posterior->samples.angles.size() : 0;
}

size_t ppt_posterior_grid_size(const ppt_posterior* posterior) {
  return posterior ? posterior->samples.grid.size() : 0;
}

int ppt_posterior_alpha_random(const ppt_posterior* posterior) {
  return posterior && posterior->samples.alpha_random() ? 1 : 0;
}

ppt_status ppt_posterior_diagnostics(const ppt_posterior* posterior, ppt_diagnostics* out) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    require_out(out, "out");
    if (s.draws.empty()) throw DomainError("no stored draws");
    ppt_diagnostics d{};
    d.draws = s.draws.size();
    d.accept_rate_r_mean = s.mean_accept_rate_r();
    d.accept_rate_r_min = *std::min_element(s.accept_rate_r.begin(), s.accept_rate_r.end());
    d.accept_rate_r_max = *std::max_element(s.accept_rate_r.begin(), s.accept_rate_r.end());
    d.accept_rate_alpha = s.accept_rate_alpha;
    std::vector<double> alphas;
    double mu1 = 0.0;
    double mu2 = 0.0;
    for (const auto& draw : s.draws) {
      alphas.push_back(draw.alpha);
      mu1 += draw.mu.mu1();
      mu2 += draw.mu.mu2();
    }
    const double t = static_cast<double>(s.draws.size());
    d.alpha_mean = std::accumulate(alphas.begin(), alphas.end(), 0.0) / t;
    d.alpha_lower = empirical_quantile(alphas, 0.025);
    d.alpha_upper = empirical_quantile(alphas, 0.975);
    d.mu1_mean = mu1 / t;
    d.mu2_mean = mu2 / t;
    *out = d;
  });
}

ppt_status ppt_posterior_density(const ppt_posterior* posterior, double* grid, double* mean,
                                 double* lower, double* upper, size_t capacity) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    const auto est = density_estimate(s);
    require_capacity(capacity, est.grid.size());
    if (grid) std::copy(est.grid.begin(), est.grid.end(), grid);
    if (mean) std::copy(est.mean.begin(), est.mean.end(), mean);
    if (lower) std::copy(est.lower.begin(), est.lower.end(), lower);
    if (upper) std::copy(est.upper.begin(), est.upper.end(), upper);
  });
}

ppt_status ppt_posterior_moments(const ppt_posterior* posterior, ppt_moment_summary* out,
                                 double* directions, double* concentrations, size_t capacity) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    require_out(out, "out");
    const auto m = moment_posterior(s);
    if (directions || concentrations) require_capacity(capacity, m.mean_direction.size());
    if (directions) std::copy(m.mean_direction.begin(), m.mean_direction.end(), directions);
    if (concentrations) std::copy(m.concentration.begin(), m.concentration.end(), concentrations);
    out->direction_median = m.direction_median;
    out->direction_lower = m.direction_ci.lower;
    out->direction_upper = m.direction_ci.upper;
    out->concentration_median = empirical_quantile(m.concentration, 0.5);
    out->concentration_lower = m.concentration_ci.lower;
    out->concentration_upper = m.concentration_ci.upper;
    out->undefined_directions = m.undefined_directions;
  });
}

ppt_status ppt_direction_difference(const ppt_posterior* a, const ppt_posterior* b,
                                    ppt_direction_diff* out) {
  return guarded([&] {
    const auto& sa = require(a, "first posterior").samples;
    const auto& sb = require(b, "second posterior").samples;
    require_out(out, "out");
    const auto d = direction_difference(moment_posterior(sa), moment_posterior(sb));
    *out = {d.draws.size(), d.ci.lower, d.ci.upper, d.prob_greater};
  });
}

ppt_status ppt_posterior_lpml(const ppt_posterior* posterior, double* lpml_out, double* cpo,
                              size_t capacity, size_t* degenerate_count) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    require_out(lpml_out, "lpml");
    const auto score = lpml(s);
    if (cpo) {
      require_capacity(capacity, score.cpo.size());
      std::copy(score.cpo.begin(), score.cpo.end(), cpo);
    }
    *lpml_out = score.lpml;
    if (degenerate_count) *degenerate_count = score.degenerate.size();
  });
}

ppt_status ppt_posterior_bayes_factor(const ppt_posterior* posterior, ppt_bayes_factor* out) {
  return guarded([&] {
    const auto& s = require(posterior, "posterior").samples;
    require_out(out, "out");
    const auto bf = savage_dickey_bf(s);
    *out = {bf.bf10, bf.log_numerator, bf.log_denominator};
  });
}

}  // extern "C"
