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

#include <vector>

#include "qrx/fock.hpp"

namespace qrx {

/// Eigenvalues of the circulant Gram matrix G_{jk} = <a_j|a_k> of a symmetric
/// PSK alphabet, lambda_k = sum_j exp(2 pi i jk / M) G_{0j}.
struct GramSpectrum {
  std::vector<double> eigenvalues;

  double trace() const;
};

/// Throws std::runtime_error if an eigenvalue is below -1e-12; smaller
/// negative values are clamped to zero.
GramSpectrum gram_spectrum(const PskAlphabet& alphabet);

/// Minimum error probability for equiprobable symmetric pure states, reached
/// by the square-root measurement: 1 - (1/M^2) (sum_k sqrt(lambda_k))^2.
double helstrom_psk(const PskAlphabet& alphabet);

/// Same, restricted to the QPSK alphabet.
double helstrom_qpsk(const PskAlphabet& alphabet);

/// Heterodyne detection with nearest-phase decisions. The outcome density for
/// symbol a_m is (1/pi) exp(-|z - a_m|^2) and each decision wedge has
/// half-angle pi/4, giving 1 - [(1 + erf(alpha / sqrt 2)) / 2]^2.
///
/// `photon_scale` rescales the mean photon number fed to the formula, for
/// comparing against curves drawn in a different intensity convention.
double heterodyne_qpsk(const PskAlphabet& alphabet, double photon_scale = 1.0);

}  // namespace qrx
