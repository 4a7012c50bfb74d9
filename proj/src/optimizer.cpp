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

#include "qrx/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrx/counter_rng.hpp"

namespace qrx {

namespace {

// Transformed coordinates: logits of R1 and R2, then (Re, Im) of the three
// displacement offsets, then (Re, Im) of the three squeezing parameters
// xi = r e^{i phi} when squeezing is enabled. The Cartesian squeezing
// coordinates keep xi = 0 an interior point of the search space.
constexpr size_t kBaseDim = 8;
constexpr size_t kSqueezeDim = 6;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) {
  p = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return std::log(p / (1.0 - p));
}

class ConfigCodec {
 public:
  explicit ConfigCodec(bool squeezing) : squeezing_(squeezing) {}

  size_t dim() const { return kBaseDim + (squeezing_ ? kSqueezeDim : 0); }

  std::vector<double> encode(const StaticReceiverConfig& cfg) const {
    std::vector<double> x;
    x.reserve(dim());
    x.push_back(logit(cfg.r1));
    x.push_back(logit(cfg.r2));
    for (const auto& b : cfg.beta) {
      x.push_back(b.real());
      x.push_back(b.imag());
    }
    if (squeezing_) {
      for (const auto& s : cfg.xi) {
        const Amplitude xi = std::polar(s.r, s.phi);
        x.push_back(xi.real());
        x.push_back(xi.imag());
      }
    }
    return x;
  }

  StaticReceiverConfig decode(std::span<const double> x) const {
    StaticReceiverConfig cfg;
    cfg.r1 = logistic(x[0]);
    cfg.r2 = logistic(x[1]);
    for (size_t j = 0; j < 3; ++j) cfg.beta[j] = {x[2 + 2 * j], x[3 + 2 * j]};
    if (squeezing_) {
      for (size_t j = 0; j < 3; ++j) {
        const Amplitude xi{x[kBaseDim + 2 * j], x[kBaseDim + 2 * j + 1]};
        const double r = std::abs(xi);
        double phi = r > 0.0 ? std::arg(xi) : 0.0;
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
        cfg.xi[j] = {r, phi};
      }
    }
    return cfg;
  }

 private:
  bool squeezing_;
};

StaticReceiverConfig without_squeezing(StaticReceiverConfig cfg) {
  cfg.xi = {};
  return cfg;
}

}  // namespace

OptimizationResult optimize_static(const PskAlphabet& alphabet, const DetectorModel& det,
                                   bool enable_squeezing, std::uint64_t seed,
                                   std::span<const StaticReceiverConfig> warm_starts,
                                   const StaticOptimizerOptions& options) {
  if (alphabet.order() != 4)
    throw std::invalid_argument("optimize_static: requires the QPSK alphabet");
  det.validate();

  const ConfigCodec codec(enable_squeezing);
  const Objective objective = [&](std::span<const double> x) {
    const StaticReceiverConfig cfg = codec.decode(x);
    double penalty = 0.0;
    for (const auto& s : cfg.xi) penalty += std::max(0.0, s.r - options.max_squeezing);
    if (penalty > 0.0) return 1.0 + penalty;
    try {
      return static_error_rate(cfg, alphabet, det);
    } catch (const TruncationError&) {
      return 2.0;
    }
  };

  std::vector<std::vector<double>> starts;
  const StaticReceiverConfig nulling = StaticReceiverConfig::exact_nulling();
  starts.push_back(codec.encode(nulling));
  for (const auto& w : warm_starts)
    starts.push_back(codec.encode(enable_squeezing ? w : without_squeezing(w)));
  CounterRng rng(seed, 0);
  for (int k = 0; k < options.random_restarts; ++k) {
    std::vector<double> x = codec.encode(nulling);
    x[0] += 0.8 * rng.normal();
    x[1] += 0.8 * rng.normal();
    for (size_t d = 2; d < kBaseDim; ++d) x[d] += 0.3 * rng.normal();
    for (size_t d = kBaseDim; d < x.size(); ++d) x[d] += 0.2 * rng.normal();
    starts.push_back(std::move(x));
  }

  OptimizationResult best;
  best.best_error = HUGE_VAL;
  NelderMeadOptions polish = options.simplex;
  polish.initial_step = 0.5 * options.simplex.initial_step;

  for (const auto& start : starts) {
    NelderMeadResult run = nelder_mead(objective, start, options.simplex);
    int iterations = run.iterations;
    for (int round = 0; round < options.max_polish_rounds; ++round) {
      NelderMeadResult next = nelder_mead(objective, run.x, polish);
      iterations += next.iterations;
      const double gain = run.value - next.value;
      if (next.value <= run.value) run = std::move(next);
      if (gain < options.polish_tolerance) break;
    }
    best.iterations += iterations;
    ++best.restarts_used;
    if (run.value < best.best_error - 1e-12) {
      best.best_error = run.value;
      best.best_config = codec.decode(run.x);
      best.converged = run.converged;
    }
  }
  return best;
}

std::vector<StaticCurvePoint> sweep_curve(std::span<const double> alpha_sq_grid,
                                          const DetectorModel& det, bool enable_squeezing,
                                          std::uint64_t seed,
                                          const StaticOptimizerOptions& options) {
  if (!std::is_sorted(alpha_sq_grid.begin(), alpha_sq_grid.end()))
    throw std::invalid_argument("sweep_curve: grid must be ascending");
  std::vector<StaticCurvePoint> curve;
  for (size_t i = 0; i < alpha_sq_grid.size(); ++i) {
    std::vector<StaticReceiverConfig> warm;
    if (!curve.empty()) warm.push_back(curve.back().result.best_config);
    const auto alphabet = PskAlphabet::qpsk(alpha_sq_grid[i]);
    curve.push_back({alpha_sq_grid[i],
                     optimize_static(alphabet, det, enable_squeezing, seed + i, warm, options)});
  }
  return curve;
}

StaticCurvePair sweep_curve_pair(std::span<const double> alpha_sq_grid, const DetectorModel& det,
                                 std::uint64_t seed, const StaticOptimizerOptions& options) {
  if (!std::is_sorted(alpha_sq_grid.begin(), alpha_sq_grid.end()))
    throw std::invalid_argument("sweep_curve_pair: grid must be ascending");
  StaticCurvePair out;
  for (size_t i = 0; i < alpha_sq_grid.size(); ++i) {
    const auto alphabet = PskAlphabet::qpsk(alpha_sq_grid[i]);
    std::vector<StaticReceiverConfig> warm_off;
    if (!out.squeezing_off.empty()) warm_off.push_back(out.squeezing_off.back().result.best_config);
    auto off = optimize_static(alphabet, det, false, seed + i, warm_off, options);

    std::vector<StaticReceiverConfig> warm_on{off.best_config};
    if (!out.squeezing_on.empty()) warm_on.push_back(out.squeezing_on.back().result.best_config);
    auto on = optimize_static(alphabet, det, true, seed + i, warm_on, options);

    out.squeezing_off.push_back({alpha_sq_grid[i], std::move(off)});
    out.squeezing_on.push_back({alpha_sq_grid[i], std::move(on)});
  }
  return out;
}

}  // namespace qrx
