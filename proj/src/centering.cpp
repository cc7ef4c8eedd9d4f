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

#include "pptree/centering.hpp"

#include <algorithm>
#include <cmath>

#include "pptree/error.hpp"

namespace pptree {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

// Acklam's rational approximation to the normal quantile; relative error
// about 1.2e-9 before refinement.
double acklam_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0, 1)");
  }
  double x = acklam_quantile(p);
  // Halley refinement. Above the median the residual is formed from the
  // complement, where 1 - p is exact and keeps its relative precision.
  for (int iter = 0; iter < 2; ++iter) {
    const double pdf = std::exp(-0.5 * x * x - 0.5 * kLogTwoPi);
    if (pdf == 0.0) break;
    const double err = p < 0.5 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_cdf(-x);
    const double u = err / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

CenteringMeasure::CenteringMeasure(double mu1, double mu2) : mu1_(mu1), mu2_(mu2) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw DomainError("centering location must be finite");
  }
}

double CenteringMeasure::norm() const noexcept { return std::hypot(mu1_, mu2_); }

double log_density_at(const CenteringMeasure& c, double x1, double x2) {
  const double d1 = x1 - c.mu1();
  const double d2 = x2 - c.mu2();
  return -kLogTwoPi - 0.5 * (d1 * d1 + d2 * d2);
}

double density_at(const CenteringMeasure& c, double x1, double x2) {
  return std::exp(log_density_at(c, x1, x2));
}

std::int64_t cell_from_probability(double p, int level) {
  const auto side = std::int64_t{1} << level;
  // Scaling by a power of two is exact, so integral products are exact
  // boundary hits and ceil sends them to the left cell.
  const double scaled = std::ldexp(p, level);
  const auto cell = static_cast<std::int64_t>(std::ceil(scaled));
  return std::clamp<std::int64_t>(cell, 1, side);
}

PartitionIndex partition_index(const CenteringMeasure& c, double x1, double x2, int level) {
  if (level < 1) throw DomainError("partition level must be >= 1");
  return {level, cell_from_probability(std_normal_cdf(x1 - c.mu1()), level),
          cell_from_probability(std_normal_cdf(x2 - c.mu2()), level)};
}

}  // namespace pptree
