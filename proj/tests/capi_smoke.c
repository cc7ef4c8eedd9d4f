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

/* Builds as C against the public header and runs a tiny fit. */

#include <stdio.h>

#include "pptree/pptree.h"

static int failures = 0;

#define EXPECT(cond)                                            \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  ppt_sample* sample = NULL;
  ppt_posterior* post = NULL;
  ppt_tree_params params;
  ppt_mcmc_config config;
  double lpml = 0.0;

  EXPECT(ppt_sample_triunfo("peccary", &sample) == PPT_OK);
  EXPECT(ppt_sample_size(sample) == 16);

  ppt_tree_params_default(&params);
  ppt_mcmc_config_default(&config);
  EXPECT(params.depth == 4);
  EXPECT(config.iterations == 10000);
  config.iterations = 200;
  config.burn_in = 100;
  config.thin = 10;

  EXPECT(ppt_fit(sample, &params, 0.0, 0.0, &config, &post) == PPT_OK);
  EXPECT(ppt_posterior_draw_count(post) == 10);
  EXPECT(ppt_posterior_lpml(post, &lpml, NULL, 0, NULL) == PPT_OK);
  EXPECT(lpml < 0.0);

  EXPECT(ppt_sample_triunfo("jaguar", NULL) == PPT_ERR_ARGUMENT);
  {
    ppt_sample* bad = NULL;
    EXPECT(ppt_sample_triunfo("jaguar", &bad) == PPT_ERR_DOMAIN);
    EXPECT(bad == NULL);
    EXPECT(ppt_last_error()[0] != '\0');
  }

  ppt_posterior_free(post);
  ppt_sample_free(sample);
  if (failures == 0) printf("capi smoke: ok\n");
  return failures == 0 ? 0 : 1;
}
