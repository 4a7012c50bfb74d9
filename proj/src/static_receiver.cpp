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

#include "qrx/static_receiver.hpp"

#include <cmath>

namespace qrx {

namespace {

void require_qpsk(const PskAlphabet& alphabet) {
  if (alphabet.order() != 4)
    throw std::invalid_argument("static receiver: only the QPSK alphabet (M = 4) is supported");
}

}  // namespace

void StaticReceiverConfig::validate() const {
  if (!(r1 >= 0.0 && r1 <= 1.0) || !(r2 >= 0.0 && r2 <= 1.0))
    throw std::invalid_argument("StaticReceiverConfig: reflectances must lie in [0, 1]");
  for (size_t j = 0; j < 3; ++j) {
    if (!std::isfinite(beta[j].real()) || !std::isfinite(beta[j].imag()))
      throw std::invalid_argument("StaticReceiverConfig: displacement must be finite");
    if (!(xi[j].r >= 0.0) || !std::isfinite(xi[j].r) || !std::isfinite(xi[j].phi))
      throw std::invalid_argument("StaticReceiverConfig: squeezing must be finite with r >= 0");
  }
}

Amplitude port_effective_amplitude(int m, Port port, const StaticReceiverConfig& cfg,
                                   const PskAlphabet& alphabet) {
  require_qpsk(alphabet);
  const int target = StaticReceiverConfig::kNullingTargets[static_cast<size_t>(port)];
  double transmission = 0.0;
  switch (port) {
    case Port::A: transmission = cfg.r1; break;
    case Port::B: transmission = (1.0 - cfg.r1) * cfg.r2; break;
    case Port::C: transmission = (1.0 - cfg.r1) * (1.0 - cfg.r2); break;
  }
  return std::sqrt(transmission) * (alphabet.symbol(m) - alphabet.symbol(target)) +
         cfg.beta_at(port);
}

ConditionalProbTable decision_probabilities(const StaticReceiverConfig& cfg,
                                            const PskAlphabet& alphabet,
                                            const DetectorModel& det) {
  require_qpsk(alphabet);
  cfg.validate();
  det.validate();
  ConditionalProbTable table{};
  for (int m = 0; m < 4; ++m) {
    std::array<double, 3> off{};
    for (Port p : kPorts) {
      const Amplitude b = port_effective_amplitude(m, p, cfg, alphabet);
      off[static_cast<size_t>(p)] = off_prob_fock(cfg.xi_at(p), b, det).value;
    }
    auto& row = table[static_cast<size_t>(m)];
    row[0] = off[0];
    row[1] = (1.0 - off[0]) * off[1];
    row[2] = (1.0 - off[0]) * (1.0 - off[1]) * off[2];
    row[3] = (1.0 - off[0]) * (1.0 - off[1]) * (1.0 - off[2]);
  }
  return table;
}

double static_error_rate(const StaticReceiverConfig& cfg, const PskAlphabet& alphabet,
                         const DetectorModel& det) {
  const ConditionalProbTable table = decision_probabilities(cfg, alphabet, det);
  double correct = 0.0;
  for (size_t i = 0; i < 4; ++i) correct += alphabet.prior(static_cast<int>(i)) * table[i][i];
  return 1.0 - correct;
}

}  // namespace qrx
