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
#include "qrx/static_receiver.hpp"

namespace qrx {
namespace {

StaticReceiverConfig random_config(std::mt19937_64& gen, bool squeezing) {
  std::uniform_real_distribution<double> unit(0.0, 1.0), off(-0.6, 0.6), phase(0.0, 6.28);
  StaticReceiverConfig cfg;
  cfg.r1 = unit(gen);
  cfg.r2 = unit(gen);
  for (auto& b : cfg.beta) b = {off(gen), off(gen)};
  if (squeezing)
    for (auto& x : cfg.xi) x = {0.8 * unit(gen), phase(gen)};
  return cfg;
}

TEST(PortAmplitude, SplitsAndNulls) {
  const auto alphabet = PskAlphabet::qpsk(1.5);
  StaticReceiverConfig cfg;
  cfg.r1 = 0.2;
  cfg.r2 = 0.7;
  for (int m = 0; m < 4; ++m) {
    double energy = 0.0;
    for (Port p : kPorts) {
      const int target = StaticReceiverConfig::kNullingTargets[static_cast<size_t>(p)];
      const double ratio = std::norm(port_effective_amplitude(m, p, cfg, alphabet)) /
                           std::max(alphabet.separation_sq(m, target), 1e-300);
      if (m != target) energy += ratio;
      else EXPECT_EQ(port_effective_amplitude(m, p, cfg, alphabet), Amplitude{});
    }
    // Two of the three ports see the symbol undisplaced to zero; their split
    // fractions add up to at most 1.
    EXPECT_LE(energy, 1.0 + 1e-12);
  }
  EXPECT_NEAR(std::norm(port_effective_amplitude(1, Port::A, cfg, alphabet)), 0.2 * 3.0, 1e-12);
  EXPECT_NEAR(std::norm(port_effective_amplitude(0, Port::B, cfg, alphabet)), 0.8 * 0.7 * 6.0,
              1e-12);
  EXPECT_NEAR(std::norm(port_effective_amplitude(3, Port::C, cfg, alphabet)), 0.8 * 0.3 * 6.0,
              1e-12);
}

TEST(DecisionTable, MatchesExpmOracle) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 3; ++trial) {
    const StaticReceiverConfig cfg = random_config(gen, true);
    const DetectorModel det{0.85, 0.01, std::nullopt};
    const auto got = decision_probabilities(cfg, PskAlphabet::qpsk(1.3), det);
    const auto want = oracle::static_table_expm(cfg, 1.3, 0.85, 0.01);
    for (int m = 0; m < 4; ++m)
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[m][i], want[m][i], 1e-10);
  }
}

TEST(DecisionTable, RowsSumToOne) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticReceiverConfig cfg = random_config(gen, trial % 2 == 0);
    const DetectorModel det{0.5 + 0.5 * (trial % 3) / 2.0, 0.001 * (trial % 4), std::nullopt};
    const auto table = decision_probabilities(cfg, PskAlphabet::qpsk(0.1 * trial), det);
    for (const auto& row : table) {
      double sum = 0.0;
      for (double p : row) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-10);
    }
  }
}

TEST(StaticErrorRate, VacuumAlphabetIsChance) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = random_config(gen, true);
    EXPECT_NEAR(static_error_rate(cfg, PskAlphabet::qpsk(0.0), {0.9, 0.01, std::nullopt}), 0.75,
                1e-12);
  }
}

TEST(StaticErrorRate, ExactNullingWithIdealDetectors) {
  const auto cfg = StaticReceiverConfig::exact_nulling();
  const auto table = decision_probabilities(cfg, PskAlphabet::qpsk(2.0), DetectorModel::ideal());
  // Symbol 0 is nulled at A and never clicks there.
  EXPECT_EQ(table[0][0], 1.0);
  // Port B nulls symbol 2, so the A-on, B-on branch cannot happen for it.
  EXPECT_EQ(table[2][2], 0.0);
  const double p = static_error_rate(cfg, PskAlphabet::qpsk(2.0), DetectorModel::ideal());
  double correct = 0.0;
  for (int m = 0; m < 4; ++m) correct += 0.25 * table[m][m];
  EXPECT_NEAR(p, 1.0 - correct, 1e-15);
}

TEST(StaticErrorRate, RejectsBadInput) {
  StaticReceiverConfig cfg;
  cfg.r1 = 1.5;
  EXPECT_THROW(static_error_rate(cfg, PskAlphabet::qpsk(1.0), DetectorModel::ideal()),
               std::invalid_argument);
  cfg = {};
  cfg.xi[1] = {-0.1, 0.0};
  EXPECT_THROW(static_error_rate(cfg, PskAlphabet::qpsk(1.0), DetectorModel::ideal()),
               std::invalid_argument);
  EXPECT_THROW(static_error_rate({}, PskAlphabet(8, 1.0), DetectorModel::ideal()),
               std::invalid_argument);
}

}  // namespace
}  // namespace qrx
