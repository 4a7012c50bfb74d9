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

#include "qrx/feedforward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <thread>

#include "qrx/counter_rng.hpp"

namespace qrx {

std::string_view to_string(DetectionMode mode) {
  return mode == DetectionMode::onoff ? "onoff" : "pnrd";
}

DetectionMode parse_detection_mode(std::string_view text) {
  if (text == "onoff" || text == "on-off") return DetectionMode::onoff;
  if (text == "pnrd") return DetectionMode::pnrd;
  throw std::invalid_argument("unknown detection mode '" + std::string(text) +
                              "' (expected onoff or pnrd)");
}

std::string_view to_string(EstimateMethod method) {
  return method == EstimateMethod::exact ? "exact" : "montecarlo";
}

void FeedforwardConfig::validate() const {
  if (stages < 1) throw std::invalid_argument("FeedforwardConfig: stages must be >= 1");
  det.validate();
}

double FeedforwardConfig::stage_mean(int m, int m_null) const {
  return det.nu + det.eta * alphabet.separation_sq(m, m_null) / stages;
}

Posterior::Posterior(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Posterior: empty probability vector");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("Posterior: negative or NaN entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Posterior: probabilities must sum to 1");
}

Posterior Posterior::from_priors(const PskAlphabet& alphabet) {
  return Posterior({alphabet.priors().begin(), alphabet.priors().end()});
}

double stage_likelihood(int n, int m, int m_null, const FeedforwardConfig& cfg) {
  const double mean = cfg.stage_mean(m, m_null);
  if (cfg.mode == DetectionMode::pnrd) {
    if (n < 0) throw std::invalid_argument("stage_likelihood: count must be >= 0");
    return poisson_prob(n, mean);
  }
  if (n == 0) return std::exp(-mean);
  if (n == 1) return -std::expm1(-mean);
  throw std::invalid_argument("stage_likelihood: on-off outcome must be 0 or 1");
}

Posterior posterior_update(const Posterior& prior, int n, int m_null,
                           const FeedforwardConfig& cfg) {
  const int order = prior.size();
  std::vector<double> w(static_cast<size_t>(order));
  double total = 0.0;
  for (int m = 0; m < order; ++m) {
    w[static_cast<size_t>(m)] = prior[m] * stage_likelihood(n, m, m_null, cfg);
    total += w[static_cast<size_t>(m)];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::domain_error("posterior_update: outcome " + std::to_string(n) +
                            " has zero probability under every hypothesis");
  for (double& x : w) x /= total;
  return Posterior(std::move(w));
}

int map_decision(const Posterior& post) {
  const auto probs = post.probs();
  const double best = *std::max_element(probs.begin(), probs.end());
  const double floor = best * (1.0 - kTieTolerance);
  for (size_t m = 0; m < probs.size(); ++m)
    if (probs[m] >= floor) return static_cast<int>(m);
  return 0;
}

int choose_nulling(const Posterior& post, int stage) {
  if (stage < 1) throw std::invalid_argument("choose_nulling: stages are numbered from 1");
  return stage == 1 ? 0 : map_decision(post);
}

namespace {

// Outcome statistics per null symbol s: (stages that nulled s, total count
// observed on them). Layout: [k_0..k_{M-1}, x_0..x_{M-1}].
using RecordKey = std::vector<int>;

class RecordPosterior {
 public:
  explicit RecordPosterior(const FeedforwardConfig& cfg) : cfg_(cfg), order_(cfg.alphabet.order()) {
    const size_t n = static_cast<size_t>(order_) * static_cast<size_t>(order_);
    mean_.resize(n);
    log_mean_.resize(n);
    log_on_.resize(n);
    for (int m = 0; m < order_; ++m) {
      for (int s = 0; s < order_; ++s) {
        const double mean = cfg.stage_mean(m, s);
        mean_[idx(m, s)] = mean;
        log_mean_[idx(m, s)] = std::log(mean);
        log_on_[idx(m, s)] = std::log(-std::expm1(-mean));
      }
    }
  }

  Posterior operator()(const RecordKey& key) const {
    std::vector<double> log_w(static_cast<size_t>(order_));
    for (int m = 0; m < order_; ++m) {
      double lw = std::log(cfg_.alphabet.prior(m));
      for (int s = 0; s < order_ && std::isfinite(lw); ++s) {
        const int k = key[static_cast<size_t>(s)];
        const int x = key[static_cast<size_t>(order_ + s)];
        if (k == 0) continue;
        const double mean = mean_[idx(m, s)];
        if (mean == 0.0) {
          if (x > 0) lw = -std::numeric_limits<double>::infinity();
          continue;
        }
        if (cfg_.mode == DetectionMode::pnrd) {
          lw += -k * mean + x * log_mean_[idx(m, s)];
        } else {
          lw += -(k - x) * mean + x * log_on_[idx(m, s)];
        }
      }
      log_w[static_cast<size_t>(m)] = lw;
    }
    const double top = *std::max_element(log_w.begin(), log_w.end());
    std::vector<double> w(log_w.size());
    double total = 0.0;
    for (size_t m = 0; m < w.size(); ++m) {
      w[m] = std::exp(log_w[m] - top);
      total += w[m];
    }
    for (double& v : w) v /= total;
    return Posterior(std::move(w));
  }

 private:
  size_t idx(int m, int s) const { return static_cast<size_t>(m * order_ + s); }

  const FeedforwardConfig& cfg_;
  int order_;
  std::vector<double> mean_, log_mean_, log_on_;
};

}  // namespace

ErrorEstimate exact_error_rate(const FeedforwardConfig& cfg, const ExactOptions& options) {
  cfg.validate();
  if (cfg.det.nu != 0.0)
    throw std::invalid_argument("exact_error_rate: requires nu = 0; use montecarlo_error_rate");
  const int order = cfg.alphabet.order();
  const size_t msize = static_cast<size_t>(order);

  double max_sep = 0.0;
  for (int m = 0; m < order; ++m) max_sep = std::max(max_sep, cfg.alphabet.separation_sq(m, 0));
  const int cutoff = cfg.mode == DetectionMode::pnrd
                         ? cfg.det.cutoff_for(max_sep / cfg.stages)
                         : 1;

  const RecordPosterior posterior_of(cfg);
  using Masses = std::vector<double>;  // probability of reaching a record, per true symbol
  std::map<RecordKey, Masses> layer;
  layer.emplace(RecordKey(2 * msize, 0), Masses(msize, 1.0));
  Masses tail(msize, 0.0);

  std::vector<double> likelihood(static_cast<size_t>(cutoff + 1) * msize);
  for (int stage = 1; stage <= cfg.stages; ++stage) {
    std::map<RecordKey, Masses> next;
    for (const auto& [key, mass] : layer) {
      const int s = choose_nulling(posterior_of(key), stage);
      for (int m = 0; m < order; ++m) {
        double kept = 0.0;
        for (int n = 0; n <= cutoff; ++n) {
          const double p = stage_likelihood(n, m, s, cfg);
          likelihood[static_cast<size_t>(n) * msize + static_cast<size_t>(m)] = p;
          kept += p;
        }
        if (cfg.mode == DetectionMode::pnrd)
          tail[static_cast<size_t>(m)] += mass[static_cast<size_t>(m)] * std::max(0.0, 1.0 - kept);
      }
      for (int n = 0; n <= cutoff; ++n) {
        bool reachable = false;
        for (int m = 0; m < order && !reachable; ++m)
          reachable = mass[static_cast<size_t>(m)] *
                          likelihood[static_cast<size_t>(n) * msize + static_cast<size_t>(m)] >
                      0.0;
        if (!reachable) continue;
        RecordKey child = key;
        child[static_cast<size_t>(s)] += 1;
        child[msize + static_cast<size_t>(s)] += n;
        auto [it, inserted] = next.try_emplace(std::move(child), msize, 0.0);
        for (size_t m = 0; m < msize; ++m)
          it->second[m] += mass[m] * likelihood[static_cast<size_t>(n) * msize + m];
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      double weight = 0.0;
      for (int m = 0; m < order; ++m)
        weight += cfg.alphabet.prior(m) * it->second[static_cast<size_t>(m)];
      if (weight < options.prune_below) {
        for (size_t m = 0; m < msize; ++m) tail[m] += it->second[m];
        it = next.erase(it);
      } else {
        ++it;
      }
    }
    layer = std::move(next);
  }

  double correct = 0.0;
  double enumerated = 0.0;
  for (const auto& [key, mass] : layer) {
    const int decision = map_decision(posterior_of(key));
    correct += cfg.alphabet.prior(decision) * mass[static_cast<size_t>(decision)];
    for (int m = 0; m < order; ++m) enumerated += cfg.alphabet.prior(m) * mass[static_cast<size_t>(m)];
  }
  double tail_mass = 0.0;
  for (int m = 0; m < order; ++m) tail_mass += cfg.alphabet.prior(m) * tail[static_cast<size_t>(m)];
  if (tail_mass > options.max_tail)
    throw TruncationError("exact_error_rate: truncated outcome mass " + std::to_string(tail_mass) +
                              " exceeds tolerance; raise the detector count cutoff",
                          2 * cutoff);

  ErrorEstimate out;
  out.p_error = std::clamp(enumerated - correct, 0.0, 1.0);
  out.std_err = tail_mass;
  out.method = EstimateMethod::exact;
  return out;
}

bool simulate_trial(const FeedforwardConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
  CounterRng rng(seed, trial);
  const int order = cfg.alphabet.order();
  const double u = rng.uniform();
  int truth = order - 1;
  double cdf = 0.0;
  for (int m = 0; m < order; ++m) {
    cdf += cfg.alphabet.prior(m);
    if (u < cdf) {
      truth = m;
      break;
    }
  }

  Posterior post = Posterior::from_priors(cfg.alphabet);
  for (int stage = 1; stage <= cfg.stages; ++stage) {
    const int s = choose_nulling(post, stage);
    int n = rng.poisson(cfg.stage_mean(truth, s));
    if (cfg.mode == DetectionMode::onoff) n = std::min(n, 1);
    post = posterior_update(post, n, s, cfg);
  }
  return map_decision(post) == truth;
}

ErrorEstimate montecarlo_error_rate(const FeedforwardConfig& cfg, std::int64_t trials,
                                    std::uint64_t seed, unsigned threads) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("montecarlo_error_rate: trials must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, trials));

  std::vector<std::int64_t> errors(threads, 0);
  auto run_block = [&](unsigned block) {
    const std::int64_t begin = trials * block / threads;
    const std::int64_t end = trials * (block + 1) / threads;
    std::int64_t count = 0;
    for (std::int64_t t = begin; t < end; ++t)
      if (!simulate_trial(cfg, seed, static_cast<std::uint64_t>(t))) ++count;
    errors[block] = count;
  };
  if (threads == 1) {
    run_block(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned b = 0; b < threads; ++b) pool.emplace_back(run_block, b);
  }

  const std::int64_t total = std::accumulate(errors.begin(), errors.end(), std::int64_t{0});
  ErrorEstimate out;
  out.trials = trials;
  out.method = EstimateMethod::montecarlo;
  out.p_error = static_cast<double>(total) / static_cast<double>(trials);
  out.std_err = std::sqrt(out.p_error * (1.0 - out.p_error) / static_cast<double>(trials));
  return out;
}

}  // namespace qrx
