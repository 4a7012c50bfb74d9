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

#include "qrx/fock.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace qrx {

namespace {

int positive_mod(int k, int m) {
  const int r = k % m;
  return r < 0 ? r + m : r;
}

// exp(2 pi i k / M), exact on the axes.
Amplitude unit_root(int k, int order) {
  k = positive_mod(k, order);
  if ((4 * k) % order == 0) {
    switch ((4 * k) / order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * k / order);
}

constexpr double kRescaleAbove = 1e200;

}  // namespace

PskAlphabet::PskAlphabet(int order, double alpha)
    : PskAlphabet(order, alpha,
                  std::vector<double>(order > 0 ? static_cast<size_t>(order) : 0,
                                      order > 0 ? 1.0 / order : 0.0)) {}

PskAlphabet::PskAlphabet(int order, double alpha, std::vector<double> priors)
    : order_(order), alpha_(alpha), priors_(std::move(priors)) {
  if (order_ < 1) throw std::invalid_argument("PskAlphabet: order must be positive");
  if (!std::isfinite(alpha_) || alpha_ < 0.0)
    throw std::invalid_argument("PskAlphabet: alpha must be finite and >= 0");
  if (priors_.size() != static_cast<size_t>(order_))
    throw std::invalid_argument("PskAlphabet: priors must have one entry per symbol");
  double total = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0)) throw std::invalid_argument("PskAlphabet: priors must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("PskAlphabet: priors must sum to 1");
}

PskAlphabet PskAlphabet::qpsk(double mean_photons) {
  if (!(mean_photons >= 0.0))
    throw std::invalid_argument("PskAlphabet: mean photon number must be >= 0");
  return PskAlphabet(4, std::sqrt(mean_photons));
}

bool PskAlphabet::uniform_priors() const noexcept {
  for (double p : priors_)
    if (std::abs(p - 1.0 / order_) > 1e-12) return false;
  return true;
}

Amplitude PskAlphabet::symbol(int m) const { return alpha_ * unit_root(m, order_); }

double PskAlphabet::separation_sq(int m, int s) const {
  int d = positive_mod(m - s, order_);
  d = std::min(d, order_ - d);
  double chord_sq;
  if ((4 * d) % order_ == 0) {
    static constexpr double kQuarterChords[] = {0.0, 2.0, 4.0};
    chord_sq = kQuarterChords[(4 * d) / order_];
  } else {
    const double half = std::sin(std::numbers::pi * d / order_);
    chord_sq = 4.0 * half * half;
  }
  return alpha_ * alpha_ * chord_sq;
}

double SqueezeParam::mu() const { return std::cosh(r); }

Amplitude SqueezeParam::kappa() const { return std::polar(std::sinh(r), phi); }

Amplitude hermite_eval(int n, Amplitude z, int order_limit) {
  if (n < 0) throw std::domain_error("hermite_eval: order must be nonnegative");
  if (n > order_limit)
    throw std::domain_error("hermite_eval: order " + std::to_string(n) +
                            " exceeds the configured limit " + std::to_string(order_limit));
  Amplitude prev{1.0, 0.0};
  if (n == 0) return prev;
  Amplitude cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const Amplitude next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
    throw std::overflow_error("hermite_eval: H_" + std::to_string(n) +
                              " overflows double; use hermite_scaled");
  return cur;
}

double ScaledComplex::log_abs() const {
  return std::log(std::abs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

void HermiteRecurrence::advance() {
  const Amplitude next = 2.0 * z_ * cur_ - 2.0 * static_cast<double>(order_) * prev_;
  prev_ = cur_;
  cur_ = next;
  ++order_;
  const double mag = std::max(std::abs(cur_.real()), std::abs(cur_.imag()));
  if (mag > 0x1p256) {
    int shift = 0;
    std::frexp(mag, &shift);
    cur_ = std::ldexp(1.0, -shift) * cur_;
    prev_ = std::ldexp(1.0, -shift) * prev_;
    exponent_ += shift;
  }
}

ScaledComplex hermite_scaled(int n, Amplitude z) {
  if (n < 0) throw std::domain_error("hermite_scaled: order must be nonnegative");
  HermiteRecurrence rec(z);
  while (rec.order() < n) rec.advance();
  return rec.value();
}

FockVector squeezed_coherent_fock(const SqueezeParam& xi, Amplitude beta, int n_max) {
  if (n_max < 0) throw std::invalid_argument("squeezed_coherent_fock: n_max must be >= 0");
  const double mu = xi.mu();
  const Amplitude kappa = xi.kappa();

  // log of exp(-|beta|^2/2 + beta^2 kappa* / (2 mu)) / sqrt(mu)
  const Amplitude log_prefactor =
      -0.5 * std::norm(beta) + beta * beta * std::conj(kappa) / (2.0 * mu) - 0.5 * std::log(mu);

  FockVector out;
  out.coeffs.resize(static_cast<size_t>(n_max) + 1);

  Amplitude h_prev{0.0, 0.0};
  Amplitude h{1.0, 0.0};
  double log_scale = 0.0;
  const Amplitude drive = beta / mu;
  const Amplitude shear = kappa / mu;

  const Amplitude prefactor = std::exp(log_prefactor);
  double norm = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    Amplitude c{0.0, 0.0};
    if (h != Amplitude{0.0, 0.0}) {
      c = log_scale == 0.0 ? prefactor * h
                           : std::exp(log_prefactor + log_scale + std::log(h));
    }
    out.coeffs[static_cast<size_t>(n)] = c;
    norm += std::norm(c);

    const Amplitude h_next =
        (drive * h - shear * std::sqrt(static_cast<double>(n)) * h_prev) /
        std::sqrt(static_cast<double>(n + 1));
    h_prev = h;
    h = h_next;
    if (std::abs(h) > kRescaleAbove) {
      h /= kRescaleAbove;
      h_prev /= kRescaleAbove;
      log_scale += std::log(kRescaleAbove);
    }
  }
  out.tail_norm = 1.0 - norm;
  return out;
}

Amplitude coherent_overlap(Amplitude a, Amplitude b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

double squeezed_coherent_mean_photons(const SqueezeParam& xi, Amplitude beta) {
  // S(xi) D(beta) = D(gamma) S(xi) with gamma = mu beta - kappa beta*.
  const Amplitude gamma = xi.mu() * beta - xi.kappa() * std::conj(beta);
  const double s = std::sinh(xi.r);
  return std::norm(gamma) + s * s;
}

}  // namespace qrx
