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

#include <cmath>
#include <string>

#include "qrx/bounds.hpp"
#include "qrx/curves.hpp"
#include "qrx/static_receiver.hpp"

namespace qrx {

namespace {

class Checker {
 public:
  explicit Checker(SelftestReport& report) : report_(report) {}

  void near(const std::string& what, double got, double want, double tol) {
    ++report_.checks;
    if (!(std::abs(got - want) <= tol))
      report_.failures.push_back(what + ": got " + std::to_string(got) + ", expected " +
                                 std::to_string(want) + " (tol " + std::to_string(tol) + ")");
  }

  void holds(const std::string& what, bool ok) {
    ++report_.checks;
    if (!ok) report_.failures.push_back(what);
  }

 private:
  SelftestReport& report_;
};

}  // namespace

SelftestReport run_selftest() {
  SelftestReport report;
  Checker check(report);
  const DetectorModel lossy{0.8, 0.0, std::nullopt};

  for (const SqueezeParam xi : {SqueezeParam{0.3, 0.4}, SqueezeParam{0.8, 2.0}}) {
    for (int m = 0; m < 4; ++m) {
      const double closed = off_prob_squeezed(xi, m, 1.2, lossy).value;
      const double fock = off_prob_fock(xi, rotated_qpsk_symbol(m, 1.2), lossy).value;
      check.near("squeezed off probability, closed form vs Fock sum", closed, fock, 1e-8);
    }
  }

  for (int k = 0; k <= 20; ++k) {
    const DetectorModel det{0.7, 0.05, 40};
    double total = 0.0;
    for (int n = 0; n <= 40; ++n) total += pnrd_povm_element(n, det, k).weights[k];
    check.near("PNRD POVM completeness at |" + std::to_string(k) + ">", total, 1.0, 1e-8);
  }

  const auto zero = PskAlphabet::qpsk(0.0);
  check.near("Helstrom at alpha = 0", helstrom_qpsk(zero), 0.75, 1e-12);
  check.near("heterodyne at alpha = 0", heterodyne_qpsk(zero), 0.75, 1e-12);
  const auto one = PskAlphabet::qpsk(1.0);
  check.holds("Helstrom below heterodyne at alpha^2 = 1",
              helstrom_qpsk(one) < heterodyne_qpsk(one) - 1e-6);

  const auto table =
      decision_probabilities(StaticReceiverConfig::exact_nulling(), one, lossy);
  for (const auto& row : table) {
    double sum = 0.0;
    for (double p : row) sum += p;
    check.near("static receiver conditional row sum", sum, 1.0, 1e-10);
  }

  for (DetectionMode mode : {DetectionMode::onoff, DetectionMode::pnrd}) {
    FeedforwardConfig cfg;
    cfg.stages = 2;
    cfg.mode = mode;
    cfg.alphabet = PskAlphabet::qpsk(1.5);
    const ErrorEstimate exact = exact_error_rate(cfg);
    const ErrorEstimate mc = montecarlo_error_rate(cfg, 20000, 7, 1);
    check.near("feedforward exact vs Monte Carlo (" + std::string(to_string(mode)) + ")",
               mc.p_error, exact.p_error, 4.0 * mc.std_err);
    check.holds("Helstrom below feedforward (" + std::string(to_string(mode)) + ")",
                helstrom_qpsk(cfg.alphabet) <= exact.p_error);
  }
  return report;
}

}  // namespace qrx
