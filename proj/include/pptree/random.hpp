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
#include <cstdint>
#include <random>

namespace pptree {

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source. Thin wrapper over a 64-bit Mersenne twister with
/// the variate generators the samplers need.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal(double mean = 0.0, double sd = 1.0);
  /// Gamma with the given shape and rate (mean shape / rate).
  double gamma(double shape, double rate);
  /// log of a Gamma(shape, 1) variate; stable for very small shapes.
  double log_gamma_variate(double shape);
  /// Dirichlet draw on the 4-simplex, returned as normalized logs.
  std::array<double, 4> log_dirichlet4(const std::array<double, 4>& params);
  std::array<double, 4> dirichlet4(const std::array<double, 4>& params);
  std::size_t categorical(const double* weights, std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pptree
