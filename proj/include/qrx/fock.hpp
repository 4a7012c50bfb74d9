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

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrx {

/// Dimensionless complex field amplitude of a coherent state.
using Amplitude = std::complex<double>;

inline constexpr int kDefaultFockCutoff = 100;
inline constexpr int kDefaultHermiteOrderLimit = 200;

/// Thrown when a truncated series or Fock expansion cannot meet its tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int suggested_cutoff)
      : std::runtime_error(what), suggested_cutoff_(suggested_cutoff) {}
  int suggested_cutoff() const noexcept { return suggested_cutoff_; }

 private:
  int suggested_cutoff_;
};

/// M-ary phase-shift-keyed coherent-state alphabet: symbol m is alpha * u^m
/// with u = exp(2 pi i / M) and alpha real.
class PskAlphabet {
 public:
  /// Equiprobable symbols.
  PskAlphabet(int order, double alpha);
  PskAlphabet(int order, double alpha, std::vector<double> priors);

  /// QPSK alphabet parameterised by the mean photon number alpha^2.
  static PskAlphabet qpsk(double mean_photons);

  int order() const noexcept { return order_; }
  double alpha() const noexcept { return alpha_; }
  double mean_photons() const noexcept { return alpha_ * alpha_; }
  double prior(int m) const { return priors_.at(static_cast<size_t>(m)); }
  std::span<const double> priors() const noexcept { return priors_; }
  bool uniform_priors() const noexcept;

  Amplitude symbol(int m) const;

  /// |alpha_m - alpha_s|^2. Depends only on the cyclic distance between m and
  /// s, and is bit-identical for distances d and M - d.
  double separation_sq(int m, int s) const;

 private:
  int order_;
  double alpha_;
  std::vector<double> priors_;
};

/// Squeezing parameter xi = r exp(i phi) of S(xi) = exp[(xi* a^2 - xi a+^2)/2].
struct SqueezeParam {
  double r = 0.0;
  double phi = 0.0;

  double mu() const;       // cosh r
  Amplitude kappa() const; // exp(i phi) sinh r
};

/// Truncated photon-number expansion of a pure single-mode state.
struct FockVector {
  std::vector<Amplitude> coeffs;
  /// 1 - sum |c_n|^2 over the retained coefficients.
  double tail_norm = 0.0;

  int n_max() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double population(int n) const { return std::norm(coeffs.at(static_cast<size_t>(n))); }
};

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
/// Throws std::domain_error for n above `order_limit` and std::overflow_error
/// when the value leaves the double range (use hermite_scaled instead).
Amplitude hermite_eval(int n, Amplitude z, int order_limit = kDefaultHermiteOrderLimit);

/// H_n(z) represented as mantissa * 2^exponent, rescaled every step so that
/// large orders and arguments never overflow.
struct ScaledComplex {
  Amplitude mantissa;
  long exponent = 0;

  double log_abs() const;
};
ScaledComplex hermite_scaled(int n, Amplitude z);

/// Streams H_0(z), H_1(z), ... in scaled form, one order per call.
class HermiteRecurrence {
 public:
  explicit HermiteRecurrence(Amplitude z) : z_(z) {}

  int order() const noexcept { return order_; }
  ScaledComplex value() const noexcept { return {cur_, exponent_}; }
  void advance();

 private:
  Amplitude z_;
  Amplitude prev_{0.0, 0.0};
  Amplitude cur_{1.0, 0.0};
  long exponent_ = 0;
  int order_ = 0;
};

/// Photon-number coefficients of S(xi) D(beta)|0>, n = 0..n_max.
///
/// The closed form carries (kappa / 2 mu)^{n/2} H_n(beta / sqrt(2 mu kappa)),
/// whose two factors diverge separately as kappa -> 0 and individually depend
/// on the branch of sqrt(kappa). Writing w = sqrt(kappa / 2 mu) and
/// z = beta / (sqrt(2 mu) sqrt(kappa)) from one principal sqrt(kappa), the
/// product h_n = w^n H_n(z) / sqrt(n!) obeys
///
///   h_{n+1} = (beta/mu * h_n - kappa/mu * sqrt(n) * h_{n-1}) / sqrt(n+1)
///
/// in which neither the branch nor 1/sqrt(kappa) appears; at kappa = 0 it
/// reduces to beta^n / sqrt(n!). h_n is carried with a running log scale so
/// that n_max is not limited by the range of n! or H_n.
FockVector squeezed_coherent_fock(const SqueezeParam& xi, Amplitude beta,
                                  int n_max = kDefaultFockCutoff);

inline FockVector coherent_fock(Amplitude beta, int n_max = kDefaultFockCutoff) {
  return squeezed_coherent_fock(SqueezeParam{}, beta, n_max);
}

/// <a|b> for coherent states.
Amplitude coherent_overlap(Amplitude a, Amplitude b);

/// Mean photon number of S(xi) D(beta)|0>.
double squeezed_coherent_mean_photons(const SqueezeParam& xi, Amplitude beta);

}  // namespace qrx
