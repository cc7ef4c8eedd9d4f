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

#include <iosfwd>

#include "pptree/mcmc.hpp"

namespace pptree {

/// JSON document holding everything downstream scoring needs: parameters,
/// configuration, data, cached densities and per-draw resultants. Trees are
/// written only when present and include_trees is set.
void save_posterior(std::ostream& out, const PosteriorSamples& samples, bool include_trees);

/// Throws IngestionError for an empty or malformed document.
PosteriorSamples load_posterior(std::istream& in);

}  // namespace pptree
