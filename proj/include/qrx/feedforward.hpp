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
#include <string_view>
#include <vector>

#include "qrx/detector.hpp"
#include "qrx/fock.hpp"

namespace qrx {

enum class DetectionMode { onoff, pnrd };

std::string_view to_string(DetectionMode mode);
DetectionMode parse_detection_mode(std::string_view text);

/// N-stage feedforward receiver: the pulse is split equally over N stages;
/// stage j displaces by -alpha_{m_j}/sqrt(N), nulling the symbol that is
/// currently most probable, and counts with an on-off detector or a PNRD.
struct FeedforwardConfig {
  int stages = 1;
  DetectionMode mode = DetectionMode::pnrd;
  DetectorModel det{};
  PskAlphabet alphabet{4, 0.0};

  void validate() const;

  /// Mean detected count at a stage nulling m_null when the signal is m:
  /// nu + eta |alpha_m - alpha_{m_null}|^2 / N.
  double stage_mean(int m, int m_null) const;
};

/// Probability vector over signal hypotheses.
class Posterior {
 public:
  explicit Posterior(std::vector<double> probs);
  static Posterior from_priors(const PskAlphabet& alphabet);

  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](int m) const { return probs_.at(static_cast<size_t>(m)); }
  int size() const noexcept { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
};

/// Relative tolerance under which two posterior entries count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// P(n | (alpha_m - alpha_{m_null}) / sqrt(N)). For on-off mode n is 0 (off)
/// or 1 (on).
double stage_likelihood(int n, int m, int m_null, const FeedforwardConfig& cfg);

/// Bayes update with one stage outcome. Throws std::domain_error if every
/// hypothesis is ruled out.
Posterior posterior_update(const Posterior& prior, int n, int m_null,
                           const FeedforwardConfig& cfg);

/// Most probable symbol; entries within kTieTolerance (relative) of the
/// maximum are tied and the lowest index wins.
int map_decision(const Posterior& post);

/// Symbol nulled at `stage` (1-based): 0 for the first stage, the MAP symbol
/// afterwards.
int choose_nulling(const Posterior& post, int stage);

enum class EstimateMethod { exact, montecarlo };

struct ErrorEstimate {
  double p_error = 0.0;
  /// Standard error for Monte Carlo; for exact evaluation, the probability
  /// mass of truncated outcome branches.
  double std_err = 0.0;
  EstimateMethod method = EstimateMethod::exact;
  std::int64_t trials = 0;
};

std::string_view to_string(EstimateMethod method);

struct ExactOptions {
  double max_tail = 1e-9;
  /// Branches whose probability (summed over hypotheses) falls below this
  /// are dropped and counted in the tail.
  double prune_below = 1e-20;
};

/// Exact average error for dark-count-free detectors (nu = 0) by enumerating
/// outcome records. Records are merged on the per-null-symbol statistics
/// (number of stages, total count), which determine the posterior, so the
/// work grows with the number of distinct posteriors rather than with
/// (cutoff + 1)^N. PNRD counts per stage are cut at the detector rule
/// evaluated at the largest stage amplitude 2 alpha / sqrt(N).
/// Throws TruncationError if the dropped mass exceeds options.max_tail.
ErrorEstimate exact_error_rate(const FeedforwardConfig& cfg, const ExactOptions& options = {});

/// Monte Carlo estimate. Trial t draws from CounterRng(seed, t), so the
/// result is bit-identical for any thread count (0 = hardware concurrency).
ErrorEstimate montecarlo_error_rate(const FeedforwardConfig& cfg, std::int64_t trials,
                                    std::uint64_t seed, unsigned threads = 0);

/// Simulate one trial; returns true if the decision was correct.
bool simulate_trial(const FeedforwardConfig& cfg, std::uint64_t seed, std::uint64_t trial);

}  // namespace qrx
