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

#include <sstream>

#include "doctest.h"
#include "pptree/data.hpp"
#include "pptree/error.hpp"
#include "pptree/fitstats.hpp"
#include "pptree/posterior_io.hpp"

using namespace pptree;

TEST_CASE("posterior round trip") {
  const auto s = triunfo("peccary");
  McmcConfig cfg;
  cfg.iterations = 300;
  cfg.burn_in = 100;
  cfg.thin = 4;
  cfg.mu_prior = NormalPrior{0.0, 1.0};
  const auto post = run_chain(s.radians(), TreeParams{4, 0.5, 1.1}, CenteringMeasure(0, 0), cfg);

  for (bool trees : {false, true}) {
    std::stringstream io;
    save_posterior(io, post, trees);
    const auto back = load_posterior(io);
    CHECK(back.draws.size() == post.draws.size());
    CHECK(back.has_trees() == trees);
    CHECK(back.mu_random());
    CHECK_FALSE(back.alpha_random());
    CHECK(back.params.alpha == 0.5);
    CHECK(back.angles == post.angles);
    CHECK(back.grid == post.grid);
    for (std::size_t d = 0; d < post.draws.size(); ++d) {
      REQUIRE(back.draws[d].resultants == post.draws[d].resultants);
      REQUIRE(back.draws[d].density_at_data == post.draws[d].density_at_data);
      REQUIRE(back.draws[d].mu == post.draws[d].mu);
      if (trees) REQUIRE(*back.draws[d].tree == *post.draws[d].tree);
    }
    CHECK(lpml(back).lpml == lpml(post).lpml);
  }
}

TEST_CASE("posterior loading errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(load_posterior(empty), IngestionError);
  std::istringstream junk("{not json");
  CHECK_THROWS_AS(load_posterior(junk), IngestionError);
  std::istringstream other(R"({"format": "something-else", "version": 1})");
  CHECK_THROWS_AS(load_posterior(other), IngestionError);
}
