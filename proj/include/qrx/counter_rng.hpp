// Copyright 2026 The qrx Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qrx {

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Random stream addressed by (seed, stream index). Each draw is a pure
/// function of (seed, stream, draw counter), so a trial's numbers do not
/// depend on which thread runs it or on how many trials ran before it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + mix64(stream + 0x3C6EF372FE94F82BULL))) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

  /// Standard normal via Box-Muller (one value per call).
  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Poisson draw by sequential inversion; means above 30 are split into
  /// independent chunks so exp(-mean) never underflows.
  int poisson(double mean) noexcept {
    int total = 0;
    while (mean > 30.0) {
      total += poisson_inversion(30.0);
      mean -= 30.0;
    }
    return total + poisson_inversion(mean);
  }

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  int poisson_inversion(double mean) noexcept {
    if (mean <= 0.0) return 0;
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    int n = 0;
    while (u >= cdf && p > 0.0) {
      ++n;
      p *= mean / n;
      cdf += p;
    }
    return n;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qrx
