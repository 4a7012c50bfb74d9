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

#include <optional>
#include <vector>

#include "qrx/fock.hpp"

namespace qrx {

/// Photon counter with quantum efficiency eta and Poissonian dark counts of
/// mean nu per pulse.
struct DetectorModel {
  double eta = 1.0;
  double nu = 0.0;
  /// Largest count resolved when enumerating PNRD outcomes. Unset means the
  /// default rule of default_count_cutoff() at the amplitude in question.
  std::optional<int> count_cutoff;

  static DetectorModel ideal() { return {}; }

  /// Throws std::invalid_argument unless 0 <= eta <= 1, nu >= 0, cutoff >= 0.
  void validate() const;

  /// Count cutoff for coherent inputs with |beta|^2 <= max_abs_sq.
  int cutoff_for(double max_abs_sq) const;
};

/// ceil(m + 12 sqrt(m)) + 5 with m = nu + eta * max_abs_sq; keeps Poisson
/// tails beyond the cutoff below 1e-10.
int default_count_cutoff(double eta, double nu, double max_abs_sq);

/// Poisson(n; mean), evaluated in log space. Poisson(0; 0) = 1.
double poisson_prob(int n, double mean);

/// Mean count of the detector for coherent input beta.
inline double detected_mean(Amplitude beta, const DetectorModel& det) {
  return det.nu + det.eta * std::norm(beta);
}

/// <beta|Pi_off|beta> = exp(-nu - eta |beta|^2).
double onoff_off_prob(Amplitude beta, const DetectorModel& det);
double onoff_on_prob(Amplitude beta, const DetectorModel& det);

/// <beta|Pi_n|beta> = exp(-nu - eta|beta|^2) (nu + eta|beta|^2)^n / n!.
double pnrd_count_prob(int n, Amplitude beta, const DetectorModel& det);

/// Diagonal of a photon-number-diagonal POVM element over |k>, k = 0..k_max.
struct PovmDiagonal {
  std::vector<double> weights;
};

/// PNRD element for outcome n:
///   e^{-nu} sum_{l=0}^{n} nu^l/l! C(k, n-l) eta^{n-l} (1-eta)^{k-(n-l)}.
/// With eta = 1, nu = 0 and k_max < n the element is identically zero.
PovmDiagonal pnrd_povm_element(int n, const DetectorModel& det, int k_max);

/// On-off "off" element e^{-nu} (1 - eta)^k.
PovmDiagonal onoff_off_element(const DetectorModel& det, int k_max);

/// sum_k w_k |c_k|^2 over the overlapping range.
double expectation(const PovmDiagonal& element, const FockVector& state);

/// A truncated-series result with a bound on the discarded remainder.
struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;
  int terms = 0;
};

/// Off probability of S(xi) D(beta)|0>, summed in the photon-number basis.
/// The cutoff starts at kDefaultFockCutoff and doubles until the discarded
/// weight e^{-nu} (1-eta)^{n_max+1} * tail_norm is below `tolerance`.
/// Throws TruncationError past `max_cutoff`.
SeriesValue off_prob_fock(const SqueezeParam& xi, Amplitude beta, const DetectorModel& det,
                          double tolerance = 1e-12, int max_cutoff = 6400);

/// QPSK symbol in the rotated convention alpha * exp(i (2m+1) pi / 4), the
/// one in which the closed-form squeezed off probability is written.
Amplitude rotated_qpsk_symbol(int m, double alpha);

/// Closed-form off probability of |xi; a_m> with a_m = rotated_qpsk_symbol(m, alpha):
///
///   exp(-nu - alpha^2 {1 - tanh r cos((2m+1) pi/2 - phi)})
///     * sum_n (1-eta)^n / (n! mu) (|kappa| / 2 mu)^n |H_n(a_m / sqrt(2 mu kappa))|^2
///
/// The series stops once a ratio-test bound on the remainder falls below
/// 1e-12 of the running sum; throws TruncationError after `max_terms`.
SeriesValue off_prob_squeezed(const SqueezeParam& xi, int m, double alpha,
                              const DetectorModel& det, int max_terms = 4000);

}  // namespace qrx
