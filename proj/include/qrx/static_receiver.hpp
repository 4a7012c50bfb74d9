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

#include <array>

#include "qrx/detector.hpp"
#include "qrx/fock.hpp"

namespace qrx {

enum class Port { A = 0, B = 1, C = 2 };

inline constexpr std::array<Port, 3> kPorts{Port::A, Port::B, Port::C};

/// Three-port receiver without feedforward. The signal is split by beam
/// splitters of reflectance R1 (to port A) and R2 (to port B, of the
/// remainder); each port displaces the symbol it nulls towards vacuum, then
/// squeezes and counts on/off.
struct StaticReceiverConfig {
  double r1 = 1.0 / 3.0;
  double r2 = 0.5;
  /// Residual displacement offsets after exact nulling, per port.
  std::array<Amplitude, 3> beta{};
  std::array<SqueezeParam, 3> xi{};

  /// Symbols nulled at ports A, B, C.
  static constexpr std::array<int, 3> kNullingTargets{0, 2, 1};

  /// Equal three-way split, exact nulling, no squeezing.
  static StaticReceiverConfig exact_nulling() { return {}; }

  void validate() const;

  Amplitude& beta_at(Port p) { return beta[static_cast<size_t>(p)]; }
  const Amplitude& beta_at(Port p) const { return beta[static_cast<size_t>(p)]; }
  SqueezeParam& xi_at(Port p) { return xi[static_cast<size_t>(p)]; }
  const SqueezeParam& xi_at(Port p) const { return xi[static_cast<size_t>(p)]; }
};

/// Row m holds P(i | m) for decisions i = 0..3.
using ConditionalProbTable = std::array<std::array<double, 4>, 4>;

/// Field amplitude reaching the detector of `port` for input symbol m:
///   A: sqrt(R1) (a_m - a_0) + beta_A
///   B: sqrt((1-R1) R2) (a_m - a_2) + beta_B
///   C: sqrt((1-R1)(1-R2)) (a_m - a_1) + beta_C
Amplitude port_effective_amplitude(int m, Port port, const StaticReceiverConfig& cfg,
                                   const PskAlphabet& alphabet);

/// Decision table from the on/off patterns: decide 0 on A-off; 1 on A-on,
/// B-off; 2 on A-on, B-on, C-off; 3 on all on.
ConditionalProbTable decision_probabilities(const StaticReceiverConfig& cfg,
                                            const PskAlphabet& alphabet,
                                            const DetectorModel& det);

/// 1 - sum_i p_i P(i|i); with equal priors 1 - (1/4) sum_i P(i|i).
double static_error_rate(const StaticReceiverConfig& cfg, const PskAlphabet& alphabet,
                         const DetectorModel& det);

}  // namespace qrx
