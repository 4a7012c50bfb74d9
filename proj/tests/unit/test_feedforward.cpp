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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qrx/bounds.hpp"
#include "qrx/counter_rng.hpp"
#include "qrx/feedforward.hpp"

namespace qrx {
namespace {

FeedforwardConfig make(int stages, DetectionMode mode, double alpha_sq, double eta = 1.0,
                       double nu = 0.0) {
  FeedforwardConfig cfg;
  cfg.stages = stages;
  cfg.mode = mode;
  cfg.det = {eta, nu, std::nullopt};
  cfg.alphabet = PskAlphabet::qpsk(alpha_sq);
  return cfg;
}

TEST(Modes, ParseAndPrint) {
  EXPECT_EQ(parse_detection_mode("pnrd"), DetectionMode::pnrd);
  EXPECT_EQ(parse_detection_mode("onoff"), DetectionMode::onoff);
  EXPECT_EQ(parse_detection_mode("on-off"), DetectionMode::onoff);
  EXPECT_THROW(parse_detection_mode("apd"), std::invalid_argument);
  EXPECT_EQ(to_string(DetectionMode::onoff), "onoff");
}

TEST(StageLikelihood, Distributions) {
  const auto on = make(3, DetectionMode::onoff, 2.0, 0.9, 0.01);
  const auto pn = make(3, DetectionMode::pnrd, 2.0, 0.9, 0.01);
  for (int m = 0; m < 4; ++m)
    for (int s = 0; s < 4; ++s) {
      EXPECT_NEAR(stage_likelihood(0, m, s, on) + stage_likelihood(1, m, s, on), 1.0, 1e-15);
      double total = 0.0;
      for (int n = 0; n < 50; ++n) total += stage_likelihood(n, m, s, pn);
      EXPECT_NEAR(total, 1.0, 1e-14);
      EXPECT_DOUBLE_EQ(pn.stage_mean(m, s), 0.01 + 0.9 * pn.alphabet.separation_sq(m, s) / 3.0);
    }
  EXPECT_THROW(stage_likelihood(2, 0, 0, on), std::invalid_argument);
  EXPECT_THROW(stage_likelihood(-1, 0, 0, pn), std::invalid_argument);
}

TEST(PosteriorTest, Validation) {
  EXPECT_THROW(Posterior({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Posterior({-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(Posterior(std::vector<double>{}), std::invalid_argument);
  EXPECT_NO_THROW(Posterior({0.25, 0.25, 0.25, 0.25}));
}

TEST(PosteriorTest, NormalisedOverRandomSequences) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> symbol(0, 3), stages(1, 12);
  std::uniform_real_distribution<double> photons(0.0, 10.0), eff(0.3, 1.0), dark(0.0, 0.05);
  for (int seq = 0; seq < 10000; ++seq) {
    const auto mode = seq % 2 ? DetectionMode::pnrd : DetectionMode::onoff;
    const auto cfg = make(stages(gen), mode, photons(gen), eff(gen), dark(gen));
    const int truth = symbol(gen);
    CounterRng rng(seq, 1);
    Posterior post = Posterior::from_priors(cfg.alphabet);
    for (int stage = 1; stage <= cfg.stages; ++stage) {
      const int s = choose_nulling(post, stage);
      int n = rng.poisson(cfg.stage_mean(truth, s));
      if (mode == DetectionMode::onoff) n = std::min(n, 1);
      post = posterior_update(post, n, s, cfg);
      double total = 0.0;
      for (double p : post.probs()) total += p;
      ASSERT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(PosteriorTest, ImpossibleOutcomeThrows) {
  const auto cfg = make(2, DetectionMode::pnrd, 0.0);
  EXPECT_THROW(posterior_update(Posterior::from_priors(cfg.alphabet), 1, 0, cfg),
               std::domain_error);
}

TEST(Decisions, TiesGoToLowestIndex) {
  EXPECT_EQ(map_decision(Posterior({0.25, 0.25, 0.25, 0.25})), 0);
  EXPECT_EQ(map_decision(Posterior({0.1, 0.4, 0.1, 0.4})), 1);
  EXPECT_EQ(map_decision(Posterior({0.1, 0.4 - 1e-14, 0.1, 0.4 + 1e-14})), 1);
  EXPECT_EQ(map_decision(Posterior({0.1, 0.3, 0.1, 0.5})), 3);
  EXPECT_EQ(choose_nulling(Posterior({0.1, 0.3, 0.1, 0.5}), 1), 0);
  EXPECT_EQ(choose_nulling(Posterior({0.1, 0.3, 0.1, 0.5}), 2), 3);
  EXPECT_THROW(choose_nulling(Posterior({1.0}), 0), std::invalid_argument);
}

struct BruteCase {
  int stages;
  DetectionMode mode;
  double alpha_sq;
  double eta;
};

class ExactEnumeration : public ::testing::TestWithParam<BruteCase> {};

TEST_P(ExactEnumeration, MatchesUnmergedBruteForce) {
  const auto c = GetParam();
  const auto e = exact_error_rate(make(c.stages, c.mode, c.alpha_sq, c.eta));
  EXPECT_EQ(e.method, EstimateMethod::exact);
  EXPECT_LE(e.std_err, 1e-9);
  EXPECT_NEAR(e.p_error, oracle::feedforward_brute_force(c.stages, c.mode, c.alpha_sq, c.eta),
              1e-11);
}

INSTANTIATE_TEST_SUITE_P(
    Grid, ExactEnumeration,
    ::testing::Values(BruteCase{1, DetectionMode::onoff, 1.0, 1.0},
                      BruteCase{1, DetectionMode::pnrd, 2.0, 1.0},
                      BruteCase{2, DetectionMode::pnrd, 0.7, 0.8},
                      BruteCase{3, DetectionMode::onoff, 0.5, 1.0},
                      BruteCase{3, DetectionMode::onoff, 4.25, 0.9},
                      BruteCase{3, DetectionMode::pnrd, 1.5, 1.0},
                      BruteCase{3, DetectionMode::pnrd, 6.0, 0.7},
                      BruteCase{6, DetectionMode::onoff, 3.0, 1.0},
                      BruteCase{9, DetectionMode::onoff, 2.0, 0.95}));

TEST(ExactErrorRate, VacuumIsChance) {
  for (auto mode : {DetectionMode::onoff, DetectionMode::pnrd})
    for (int n : {1, 3, 10}) EXPECT_EQ(exact_error_rate(make(n, mode, 0.0)).p_error, 0.75);
}

TEST(ExactErrorRate, ZeroEfficiencyIsChance) {
  EXPECT_EQ(exact_error_rate(make(3, DetectionMode::pnrd, 4.0, 0.0)).p_error, 0.75);
}

TEST(ExactErrorRate, AboveHelstromAndPnrdNoWorse) {
  for (double a : {0.5, 2.0, 5.0}) {
    const double pn = exact_error_rate(make(3, DetectionMode::pnrd, a)).p_error;
    const double on = exact_error_rate(make(3, DetectionMode::onoff, a)).p_error;
    EXPECT_LE(pn, on + 1e-12);
    EXPECT_GE(pn, helstrom_qpsk(PskAlphabet::qpsk(a)) - 1e-9);
  }
}

// Largest |d2 log P| relative to the points two grid steps either side.
double max_local_kink(const std::vector<double>& p) {
  std::vector<double> d;
  for (size_t i = 1; i + 1 < p.size(); ++i)
    d.push_back(std::abs(std::log(p[i - 1]) - 2 * std::log(p[i]) + std::log(p[i + 1])));
  double best = 0.0;
  for (size_t i = 2; i + 2 < d.size(); ++i) best = std::max(best, d[i] / std::max(d[i - 2], d[i + 2]));
  return best;
}

TEST(ExactErrorRate, PnrdCurveHasKinksWhereHeterodyneIsSmooth) {
  std::vector<double> pnrd, het;
  for (int i = 1; i <= 40; ++i) {
    pnrd.push_back(exact_error_rate(make(3, DetectionMode::pnrd, 0.25 * i)).p_error);
    het.push_back(heterodyne_qpsk(PskAlphabet::qpsk(0.25 * i)));
  }
  EXPECT_GT(max_local_kink(pnrd), 10.0);
  EXPECT_LT(max_local_kink(het), 2.0);
}

TEST(ExactErrorRate, RejectsDarkCountsAndReportsTruncation) {
  EXPECT_THROW(exact_error_rate(make(3, DetectionMode::pnrd, 1.0, 1.0, 0.01)),
               std::invalid_argument);
  auto cfg = make(3, DetectionMode::pnrd, 10.0);
  cfg.det.count_cutoff = 2;
  EXPECT_THROW(exact_error_rate(cfg), TruncationError);
  cfg.stages = 0;
  EXPECT_THROW(exact_error_rate(cfg), std::invalid_argument);
}

TEST(MonteCarlo, AgreesWithExact) {
  for (auto mode : {DetectionMode::onoff, DetectionMode::pnrd}) {
    const auto cfg = make(3, mode, 1.75);
    const auto exact = exact_error_rate(cfg);
    const auto mc = montecarlo_error_rate(cfg, 40000, 99);
    EXPECT_EQ(mc.method, EstimateMethod::montecarlo);
    EXPECT_EQ(mc.trials, 40000);
    EXPECT_NEAR(mc.p_error, exact.p_error, 4.0 * mc.std_err);
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto cfg = make(4, DetectionMode::pnrd, 2.5, 0.8, 0.01);
  const auto ref = montecarlo_error_rate(cfg, 5001, 42, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto e = montecarlo_error_rate(cfg, 5001, 42, t);
    EXPECT_EQ(e.p_error, ref.p_error);
    EXPECT_EQ(e.std_err, ref.std_err);
  }
  EXPECT_NE(montecarlo_error_rate(cfg, 5001, 43, 1).p_error, ref.p_error);
}

TEST(MonteCarlo, TrialsAreAddressable) {
  const auto cfg = make(3, DetectionMode::onoff, 1.0, 0.9, 0.001);
  for (std::uint64_t t = 0; t < 50; ++t)
    EXPECT_EQ(simulate_trial(cfg, 5, t), simulate_trial(cfg, 5, t));
  EXPECT_THROW(montecarlo_error_rate(cfg, 0, 1), std::invalid_argument);
}

TEST(CounterRngTest, PoissonMoments) {
  for (double mean : {0.0, 0.3, 4.0, 75.0}) {
    double sum = 0.0, sq = 0.0;
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) {
      CounterRng rng(7, i);
      const double x = rng.poisson(mean);
      sum += x;
      sq += x * x;
    }
    const double m = sum / draws, var = sq / draws - m * m;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(std::max(mean, 1e-3) / draws));
    EXPECT_NEAR(var, mean, 0.05 * mean + 1e-9);
  }
}

TEST(CounterRngTest, UniformRangeAndDeterminism) {
  CounterRng a(1, 2), b(1, 2), c(1, 3);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_EQ(x, b.uniform());
    differs |= x != c.uniform();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.draws(), 1000u);
}

}  // namespace
}  // namespace qrx
