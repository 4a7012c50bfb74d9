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

#include "qrx/bounds.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace qrx {

double GramSpectrum::trace() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

GramSpectrum gram_spectrum(const PskAlphabet& alphabet) {
  const int order = alphabet.order();
  std::vector<Amplitude> first_row(static_cast<size_t>(order));
  for (int j = 0; j < order; ++j)
    first_row[static_cast<size_t>(j)] = coherent_overlap(alphabet.symbol(0), alphabet.symbol(j));

  GramSpectrum out;
  out.eigenvalues.resize(static_cast<size_t>(order));
  for (int k = 0; k < order; ++k) {
    Amplitude lambda{0.0, 0.0};
    for (int j = 0; j < order; ++j) {
      const int turn = (j * k) % order;
      lambda += std::polar(1.0, 2.0 * std::numbers::pi * turn / order) *
                first_row[static_cast<size_t>(j)];
    }
    double value = lambda.real();
    if (value < -1e-12)
      throw std::runtime_error("gram_spectrum: negative Gram eigenvalue " + std::to_string(value));
    out.eigenvalues[static_cast<size_t>(k)] = std::max(value, 0.0);
  }
  return out;
}

double helstrom_psk(const PskAlphabet& alphabet) {
  if (!alphabet.uniform_priors())
    throw std::invalid_argument("helstrom_psk: requires equal priors");
  const GramSpectrum spectrum = gram_spectrum(alphabet);
  double root_sum = 0.0;
  for (double lambda : spectrum.eigenvalues) root_sum += std::sqrt(lambda);
  const double order = alphabet.order();
  return std::max(0.0, 1.0 - root_sum * root_sum / (order * order));
}

double helstrom_qpsk(const PskAlphabet& alphabet) {
  if (alphabet.order() != 4) throw std::invalid_argument("helstrom_qpsk: requires M = 4");
  return helstrom_psk(alphabet);
}

double heterodyne_qpsk(const PskAlphabet& alphabet, double photon_scale) {
  if (alphabet.order() != 4) throw std::invalid_argument("heterodyne_qpsk: requires M = 4");
  if (!alphabet.uniform_priors())
    throw std::invalid_argument("heterodyne_qpsk: requires equal priors");
  if (!(photon_scale > 0.0))
    throw std::invalid_argument("heterodyne_qpsk: photon scale must be positive");
  const double alpha = std::sqrt(photon_scale) * alphabet.alpha();
  const double half_plane = 0.5 * std::erfc(-alpha / std::numbers::sqrt2);
  return 1.0 - half_plane * half_plane;
}

}  // namespace qrx
