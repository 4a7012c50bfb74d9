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

#include <cstdint>
#include <span>
#include <vector>

#include "qrx/nelder_mead.hpp"
#include "qrx/static_receiver.hpp"

namespace qrx {

struct StaticOptimizerOptions {
  int random_restarts = 6;
  NelderMeadOptions simplex{};
  /// Fresh-simplex restarts from each local optimum until the gain drops
  /// below polish_tolerance.
  int max_polish_rounds = 12;
  double polish_tolerance = 1e-13;
  /// Squeezing magnitudes above this are rejected by the objective.
  double max_squeezing = 3.0;
};

struct OptimizationResult {
  StaticReceiverConfig best_config;
  double best_error = 0.75;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Multi-start Nelder-Mead over (R1, R2, beta_A..C, xi_A..C) minimising
/// static_error_rate. Starts, in order: exact nulling, each warm start, then
/// `random_restarts` perturbations drawn from `seed`. The lowest error wins;
/// errors within 1e-12 go to the earlier start.
///
/// With squeezing disabled every r_j is pinned to 0 and the squeezing of the
/// warm starts is dropped.
OptimizationResult optimize_static(const PskAlphabet& alphabet, const DetectorModel& det,
                                   bool enable_squeezing, std::uint64_t seed,
                                   std::span<const StaticReceiverConfig> warm_starts = {},
                                   const StaticOptimizerOptions& options = {});

struct StaticCurvePoint {
  double alpha_sq = 0.0;
  OptimizationResult result;
};

/// optimize_static over an ascending grid of mean photon numbers, warm
/// starting each point from the previous optimum.
std::vector<StaticCurvePoint> sweep_curve(std::span<const double> alpha_sq_grid,
                                          const DetectorModel& det, bool enable_squeezing,
                                          std::uint64_t seed,
                                          const StaticOptimizerOptions& options = {});

/// Both curves at once: squeezing off first, then squeezing on seeded with
/// the squeezing-off optimum of the same point, so on <= off holds pointwise.
struct StaticCurvePair {
  std::vector<StaticCurvePoint> squeezing_off;
  std::vector<StaticCurvePoint> squeezing_on;
};
StaticCurvePair sweep_curve_pair(std::span<const double> alpha_sq_grid, const DetectorModel& det,
                                 std::uint64_t seed, const StaticOptimizerOptions& options = {});

}  // namespace qrx
