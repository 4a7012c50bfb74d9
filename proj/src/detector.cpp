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

#include "qrx/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qrx {

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("DetectorModel: eta must lie in [0, 1]");
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw std::invalid_argument("DetectorModel: nu must be finite and >= 0");
  if (count_cutoff && *count_cutoff < 0)
    throw std::invalid_argument("DetectorModel: count cutoff must be >= 0");
}

int DetectorModel::cutoff_for(double max_abs_sq) const {
  return count_cutoff ? *count_cutoff : default_count_cutoff(eta, nu, max_abs_sq);
}

int default_count_cutoff(double eta, double nu, double max_abs_sq) {
  const double mean = nu + eta * max_abs_sq;
  return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean))) + 5;
}

double poisson_prob(int n, double mean) {
  if (n < 0) return 0.0;
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

double onoff_off_prob(Amplitude beta, const DetectorModel& det) {
  return std::exp(-detected_mean(beta, det));
}

double onoff_on_prob(Amplitude beta, const DetectorModel& det) {
  return -std::expm1(-detected_mean(beta, det));
}

double pnrd_count_prob(int n, Amplitude beta, const DetectorModel& det) {
  if (n < 0) throw std::invalid_argument("pnrd_count_prob: count must be >= 0");
  return poisson_prob(n, detected_mean(beta, det));
}

PovmDiagonal pnrd_povm_element(int n, const DetectorModel& det, int k_max) {
  det.validate();
  if (n < 0) throw std::invalid_argument("pnrd_povm_element: count must be >= 0");
  if (det.count_cutoff && n > *det.count_cutoff)
    throw std::invalid_argument("pnrd_povm_element: count " + std::to_string(n) +
                                " exceeds the detector cutoff");
  if (k_max < 0) throw std::invalid_argument("pnrd_povm_element: k_max must be >= 0");

  PovmDiagonal out;
  out.weights.assign(static_cast<size_t>(k_max) + 1, 0.0);
  const double log_eta = std::log(det.eta);
  const double log_loss = std::log1p(-det.eta);
  for (int k = 0; k <= k_max; ++k) {
    double w = 0.0;
    for (int l = 0; l <= n; ++l) {
      const int detected = n - l;  // photons registered from the signal
      if (detected > k) continue;
      const int lost = k - detected;
      // 0^0 = 1 for the eta in {0, 1} edges.
      const double eta_part = detected == 0 ? 0.0 : detected * log_eta;
      const double loss_part = lost == 0 ? 0.0 : lost * log_loss;
      const double dark_part = l == 0 ? 0.0 : l * std::log(det.nu);
      const double log_term = dark_part - std::lgamma(l + 1.0) + std::lgamma(k + 1.0) -
                              std::lgamma(detected + 1.0) - std::lgamma(lost + 1.0) +
                              eta_part + loss_part;
      w += std::exp(log_term);
    }
    out.weights[static_cast<size_t>(k)] = std::exp(-det.nu) * w;
  }
  return out;
}

PovmDiagonal onoff_off_element(const DetectorModel& det, int k_max) {
  det.validate();
  PovmDiagonal out;
  out.weights.resize(static_cast<size_t>(k_max) + 1);
  const double damp = 1.0 - det.eta;
  double w = std::exp(-det.nu);
  for (auto& weight : out.weights) {
    weight = w;
    w *= damp;
  }
  return out;
}

double expectation(const PovmDiagonal& element, const FockVector& state) {
  const size_t n = std::min(element.weights.size(), state.coeffs.size());
  double total = 0.0;
  for (size_t k = 0; k < n; ++k) total += element.weights[k] * std::norm(state.coeffs[k]);
  return total;
}

SeriesValue off_prob_fock(const SqueezeParam& xi, Amplitude beta, const DetectorModel& det,
                          double tolerance, int max_cutoff) {
  det.validate();
  const double damp = 1.0 - det.eta;
  const double dark = std::exp(-det.nu);
  if (damp == 0.0) {
    // Only the vacuum weight is nonzero.
    return {dark * squeezed_coherent_fock(xi, beta, 0).population(0), 0.0, 1};
  }
  for (int n_max = kDefaultFockCutoff; n_max <= max_cutoff; n_max *= 2) {
    const FockVector state = squeezed_coherent_fock(xi, beta, n_max);
    double sum = 0.0;
    double w = dark;
    for (const auto& c : state.coeffs) {
      sum += w * std::norm(c);
      w *= damp;
    }
    // w now holds e^{-nu} (1-eta)^{n_max+1}, the largest weight beyond the cutoff.
    const double bound = w * std::max(state.tail_norm, 0.0);
    if (bound <= tolerance) return {sum, bound, n_max + 1};
  }
  throw TruncationError("off_prob_fock: Fock tail above tolerance at cutoff " +
                            std::to_string(max_cutoff) + "; raise the cutoff",
                        2 * max_cutoff);
}

Amplitude rotated_qpsk_symbol(int m, double alpha) {
  return std::polar(alpha, (2 * m + 1) * std::numbers::pi / 4.0);
}

SeriesValue off_prob_squeezed(const SqueezeParam& xi, int m, double alpha,
                              const DetectorModel& det, int max_terms) {
  det.validate();
  const double mu = xi.mu();
  const Amplitude kappa = xi.kappa();
  const double abs_kappa = std::abs(kappa);
  const Amplitude a = rotated_qpsk_symbol(m, alpha);

  const double phase = (2 * m + 1) * std::numbers::pi / 2.0 - xi.phi;
  const double log_front =
      -det.nu - alpha * alpha * (1.0 - std::tanh(xi.r) * std::cos(phase));

  const double log_loss = det.eta < 1.0 ? std::log1p(-det.eta)
                                        : -std::numeric_limits<double>::infinity();
  const bool coherent_limit = abs_kappa < 1e-8;
  const double log_ratio =
      coherent_limit ? 0.0 : std::log(abs_kappa / (2.0 * mu));
  const double log_alpha_sq = alpha > 0.0 ? std::log(alpha * alpha)
                                          : -std::numeric_limits<double>::infinity();
  HermiteRecurrence hermite(coherent_limit ? Amplitude{} : a / std::sqrt(2.0 * mu * kappa));

  auto term = [&](int n) -> double {
    if (n > 0 && det.eta == 1.0) return 0.0;
    const double loss = n == 0 ? 0.0 : n * log_loss;
    double log_t;
    if (coherent_limit) {
      // (|kappa|/2mu)^n |H_n(a/sqrt(2 mu kappa))|^2 -> |a|^{2n} as kappa -> 0
      if (n > 0 && alpha == 0.0) return 0.0;
      log_t = loss + (n == 0 ? 0.0 : n * log_alpha_sq) - std::lgamma(n + 1.0) - std::log(mu);
    } else {
      const ScaledComplex h = hermite.value();
      if (h.mantissa == Amplitude{}) return 0.0;
      log_t = loss - std::lgamma(n + 1.0) - std::log(mu) + n * log_ratio + 2.0 * h.log_abs();
    }
    return std::exp(log_t);
  };

  // Terms are tested in consecutive pairs: at zero argument the odd Hermite
  // values vanish and a single-term ratio would stop the series early.
  double sum = 0.0;
  double prev_pair = -1.0;
  for (int n = 0; n + 1 < max_terms; n += 2) {
    const double t0 = term(n);
    if (!coherent_limit) hermite.advance();
    const double t1 = term(n + 1);
    if (!coherent_limit) hermite.advance();
    const double pair = t0 + t1;
    sum += pair;
    if (pair == 0.0 && (det.eta == 1.0 || n > 0)) {
      return {std::exp(log_front) * sum, 0.0, n + 2};
    }
    if (prev_pair > 0.0) {
      const double rho = pair / prev_pair;
      if (rho < 1.0) {
        const double remainder = pair * rho / (1.0 - rho);
        if (remainder <= 1e-12 * sum)
          return {std::exp(log_front) * sum, std::exp(log_front) * remainder, n + 2};
      }
    }
    prev_pair = pair;
  }
  throw TruncationError("off_prob_squeezed: series not converged after " +
                            std::to_string(max_terms) + " terms; raise the term limit",
                        2 * max_terms);
}

}  // namespace qrx
