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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pptree/centering.hpp"
#include "pptree/projection.hpp"
#include "pptree/random.hpp"

namespace pptree {

enum class AngleUnit { Radians, Degrees, Clock24 };

/// Parses "radians", "degrees" or "clock24". Throws DomainError otherwise.
AngleUnit parse_angle_unit(std::string_view text);

struct AngleSample {
  std::string name;
  std::vector<CircularAngle> angles;
  /// Source line of each angle (1-based), empty for generated samples.
  std::vector<std::size_t> rows;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return angles.size(); }
  std::vector<double> radians() const;
};

/// Reads one angle per row; comma or whitespace delimited; an optional
/// single header line; blank lines and '#' comments skipped. Angles outside
/// (0, 2pi] after unit conversion are reduced and a warning is recorded.
/// Throws ParseError for a bad record and IngestionError if no angles.
AngleSample load_angles(std::istream& in, AngleUnit unit, std::string name = {});

/// Writes the ingestion format: a "theta" header, one radian value per row.
void write_angles(std::ostream& out, const AngleSample& sample);

/// Camera-trap activity times at El Triunfo (radians). Species is one of
/// peccary, tapir, deer; throws DomainError otherwise.
AngleSample triunfo(std::string_view species);

struct MixtureSpec {
  std::array<double, 4> weights{0.1, 0.2, 0.4, 0.3};
  std::array<std::array<double, 2>, 4> locations{
      {{1.5, 1.5}, {-1.0, 1.0}, {-1.0, -2.0}, {1.5, -1.5}}};

  /// Throws DomainError unless weights are nonnegative and sum to 1.
  void validate() const;
};

/// Projected four-component mixture of unit-precision bivariate normals.
AngleSample simulate_mixture(std::size_t n, const MixtureSpec& spec, Rng& rng);

/// Projected N2(mu, I).
AngleSample simulate_projected_normal(std::size_t n, const CenteringMeasure& mu, Rng& rng);

}  // namespace pptree
