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

namespace pptree {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Standard normal CDF, absolute error below 1e-12.
double std_normal_cdf(double z);

/// Inverse of std_normal_cdf. Throws DomainError unless 0 < p < 1.
double std_normal_quantile(double p);

/// Centering measure N(mu1, 1) x N(mu2, 1). The precision is fixed to the
/// identity, so the location is the only state.
class CenteringMeasure {
 public:
  CenteringMeasure() = default;
  CenteringMeasure(double mu1, double mu2);

  double mu1() const noexcept { return mu1_; }
  double mu2() const noexcept { return mu2_; }
  /// Euclidean norm of the location.
  double norm() const noexcept;

  friend bool operator==(const CenteringMeasure&, const CenteringMeasure&) = default;

 private:
  double mu1_ = 0.0;
  double mu2_ = 0.0;
};

/// Cell B_{m,j,k} of the level-m partition; j indexes the x-axis interval
/// and k the y-axis interval, both 1-based in 1..2^m.
struct PartitionIndex {
  int level = 1;
  std::int64_t j = 1;
  std::int64_t k = 1;

  friend bool operator==(const PartitionIndex&, const PartitionIndex&) = default;
};

double density_at(const CenteringMeasure& c, double x1, double x2);
double log_density_at(const CenteringMeasure& c, double x1, double x2);

/// 1-based level-m cell of a point whose marginal CDF value is p. Cells are
/// closed on the right, so p exactly on a dyadic boundary goes left.
std::int64_t cell_from_probability(double p, int level);

PartitionIndex partition_index(const CenteringMeasure& c, double x1, double x2, int level);

}  // namespace pptree
