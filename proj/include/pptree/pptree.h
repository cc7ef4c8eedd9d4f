/* Copyright 2026 The pptree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the projected Polya tree library.
 *
 * Every fallible call returns a ppt_status; on failure ppt_last_error()
 * describes the problem (thread-local, valid until the next call on the same
 * thread). Objects are opaque handles released with the matching _free
 * function. Buffers are caller-owned; sizes are given by the accessor
 * functions noted on each call.
 */
#ifndef PPTREE_PPTREE_H
#define PPTREE_PPTREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPT_BUILDING_LIBRARY)
#    define PPT_API __declspec(dllexport)
#  else
#    define PPT_API __declspec(dllimport)
#  endif
#else
#  define PPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppt_status {
  PPT_OK = 0,
  PPT_ERR_DOMAIN = 1,    /* argument outside the domain of the operation */
  PPT_ERR_PARSE = 2,     /* malformed text record */
  PPT_ERR_INGESTION = 3, /* empty or unusable data / posterior file */
  PPT_ERR_CONTRACT = 4,  /* operation unsupported for this configuration */
  PPT_ERR_IO = 5,        /* file could not be opened or written */
  PPT_ERR_ARGUMENT = 6,  /* null handle or buffer */
  PPT_ERR_INTERNAL = 7
} ppt_status;

typedef enum ppt_unit {
  PPT_UNIT_RADIANS = 0,
  PPT_UNIT_DEGREES = 1,
  PPT_UNIT_CLOCK24 = 2
} ppt_unit;

typedef enum ppt_radial_rule {
  PPT_RULE_RIEMANN = 0,
  PPT_RULE_TRAPEZOID = 1
} ppt_radial_rule;

typedef struct ppt_sample ppt_sample;
typedef struct ppt_posterior ppt_posterior;

typedef struct ppt_tree_params {
  int depth;    /* M >= 1 */
  double alpha; /* > 0 */
  double delta; /* > 1 */
} ppt_tree_params;

typedef struct ppt_mcmc_config {
  int iterations;
  int burn_in;
  int thin;
  double kappa;
  int alpha_prior_enabled;
  double alpha_prior_shape;
  double alpha_prior_rate;
  int mu_prior_enabled;
  double mu_prior_mean;
  double mu_prior_precision;
  double kappa_alpha;
  uint64_t seed;
  int quad_nodes;
  int grid_angles;
  ppt_radial_rule rule;
} ppt_mcmc_config;

typedef struct ppt_mixture_spec {
  double weights[4];
  double locations[4][2];
} ppt_mixture_spec;

typedef struct ppt_diagnostics {
  size_t draws;
  double accept_rate_r_mean;
  double accept_rate_r_min;
  double accept_rate_r_max;
  double accept_rate_alpha;
  double alpha_mean;
  double alpha_lower; /* 2.5% */
  double alpha_upper; /* 97.5% */
  double mu1_mean;
  double mu2_mean;
} ppt_diagnostics;

typedef struct ppt_moment_summary {
  double direction_median;
  double direction_lower; /* unwrapped around the median */
  double direction_upper;
  double concentration_median;
  double concentration_lower;
  double concentration_upper;
  size_t undefined_directions;
} ppt_moment_summary;

typedef struct ppt_direction_diff {
  size_t pairs;
  double lower;
  double upper;
  double prob_greater;
} ppt_direction_diff;

typedef struct ppt_bayes_factor {
  double bf10;
  double log_numerator;
  double log_denominator;
} ppt_bayes_factor;

PPT_API const char* ppt_version(void);
PPT_API const char* ppt_last_error(void);
PPT_API const char* ppt_status_string(ppt_status status);

PPT_API void ppt_tree_params_default(ppt_tree_params* params);
PPT_API void ppt_mcmc_config_default(ppt_mcmc_config* config);
PPT_API void ppt_mixture_spec_default(ppt_mixture_spec* spec);

/* Samples ---------------------------------------------------------------- */

PPT_API ppt_status ppt_sample_load(const char* path, ppt_unit unit, ppt_sample** out);
/* species: "peccary", "tapir" or "deer" */
PPT_API ppt_status ppt_sample_triunfo(const char* species, ppt_sample** out);
PPT_API ppt_status ppt_sample_from_radians(const double* angles, size_t n, const char* name,
                                           ppt_sample** out);
/* spec may be NULL for the default four-component mixture. */
PPT_API ppt_status ppt_sample_simulate_mixture(size_t n, const ppt_mixture_spec* spec,
                                               uint64_t seed, ppt_sample** out);
PPT_API ppt_status ppt_sample_simulate_projected_normal(size_t n, double mu1, double mu2,
                                                        uint64_t seed, ppt_sample** out);
PPT_API size_t ppt_sample_size(const ppt_sample* sample);
PPT_API const char* ppt_sample_name(const ppt_sample* sample);
/* out must hold ppt_sample_size() values. */
PPT_API ppt_status ppt_sample_angles(const ppt_sample* sample, double* out, size_t capacity);
PPT_API size_t ppt_sample_warning_count(const ppt_sample* sample);
PPT_API const char* ppt_sample_warning(const ppt_sample* sample, size_t index);
PPT_API ppt_status ppt_sample_save(const ppt_sample* sample, const char* path);
PPT_API void ppt_sample_free(ppt_sample* sample);

/* Prior simulation ------------------------------------------------------- */

/* Writes the grid_angles + 1 reporting angles (0+ first, 2pi last). */
PPT_API ppt_status ppt_reporting_grid(int grid_angles, double* out, size_t capacity);

/* Draws `paths` prior trees and evaluates each projected density on the
 * reporting grid. densities holds paths * (grid_angles + 1) values, row per
 * path; mean_directions / concentrations / direction_defined hold `paths`
 * values each and may be NULL. */
PPT_API ppt_status ppt_prior_sim(const ppt_tree_params* params, double mu1, double mu2,
                                 size_t paths, int grid_angles, int quad_nodes, uint64_t seed,
                                 double* densities, double* mean_directions,
                                 double* concentrations, int* direction_defined);

/* Posterior -------------------------------------------------------------- */

PPT_API ppt_status ppt_fit(const ppt_sample* sample, const ppt_tree_params* params, double mu1,
                           double mu2, const ppt_mcmc_config* config, ppt_posterior** out);
PPT_API ppt_status ppt_posterior_save(const ppt_posterior* posterior, const char* path,
                                      int include_trees);
PPT_API ppt_status ppt_posterior_load(const char* path, ppt_posterior** out);
PPT_API void ppt_posterior_free(ppt_posterior* posterior);

PPT_API size_t ppt_posterior_draw_count(const ppt_posterior* posterior);
PPT_API size_t ppt_posterior_data_size(const ppt_posterior* posterior);
PPT_API size_t ppt_posterior_grid_size(const ppt_posterior* posterior);
PPT_API int ppt_posterior_alpha_random(const ppt_posterior* posterior);

PPT_API ppt_status ppt_posterior_diagnostics(const ppt_posterior* posterior,
                                             ppt_diagnostics* out);
/* Buffers hold ppt_posterior_grid_size() values. */
PPT_API ppt_status ppt_posterior_density(const ppt_posterior* posterior, double* grid,
                                         double* mean, double* lower, double* upper,
                                         size_t capacity);
/* directions / concentrations hold ppt_posterior_draw_count() values and may
 * be NULL. */
PPT_API ppt_status ppt_posterior_moments(const ppt_posterior* posterior, ppt_moment_summary* out,
                                         double* directions, double* concentrations,
                                         size_t capacity);
PPT_API ppt_status ppt_direction_difference(const ppt_posterior* a, const ppt_posterior* b,
                                            ppt_direction_diff* out);
/* cpo holds ppt_posterior_data_size() values and may be NULL. */
PPT_API ppt_status ppt_posterior_lpml(const ppt_posterior* posterior, double* lpml, double* cpo,
                                      size_t capacity, size_t* degenerate_count);
/* Fails with PPT_ERR_CONTRACT when alpha was sampled. */
PPT_API ppt_status ppt_posterior_bayes_factor(const ppt_posterior* posterior,
                                              ppt_bayes_factor* out);

#ifdef __cplusplus
}
#endif

#endif /* PPTREE_PPTREE_H */
