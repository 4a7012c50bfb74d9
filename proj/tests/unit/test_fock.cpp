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

#include <cmath>

#include "oracles.hpp"
#include "qrx/fock.hpp"

namespace qrx {
namespace {

TEST(Hermite, LowOrdersMatchClosedForms) {
  const Amplitude z{0.7, -0.4};
  EXPECT_EQ(hermite_eval(0, z), Amplitude(1.0));
  EXPECT_NEAR(std::abs(hermite_eval(1, z) - 2.0 * z), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hermite_eval(2, z) - (4.0 * z * z - 2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(hermite_eval(3, z) - (8.0 * z * z * z - 12.0 * z)), 0.0, 1e-13);
}

TEST(Hermite, RecurrenceMatchesExplicitSum) {
  for (const Amplitude z : {Amplitude{0.3, 0.0}, Amplitude{-1.1, 0.8}, Amplitude{0.0, 2.5},
                            Amplitude{3.0, -0.2}}) {
    for (int n = 0; n <= 25; ++n) {
      const auto ref = oracle::hermite_explicit(n, {z.real(), z.imag()});
      const Amplitude want(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
      const Amplitude got = hermite_eval(n, z);
      EXPECT_LE(std::abs(got - want), 1e-11 * std::max(1.0, std::abs(want)))
          << "n=" << n << " z=" << z;
    }
  }
}

TEST(Hermite, ParityAndSymmetry) {
  const Amplitude z{0.9, 0.35};
  for (int n = 0; n < 30; ++n) {
    const Amplitude a = hermite_eval(n, -z);
    const Amplitude b = (n % 2 ? -1.0 : 1.0) * hermite_eval(n, z);
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b)));
    EXPECT_LE(std::abs(hermite_eval(n, std::conj(z)) - std::conj(hermite_eval(n, z))),
              1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST(Hermite, OrderLimitAndOverflow) {
  EXPECT_THROW(hermite_eval(201, 0.1), std::domain_error);
  EXPECT_THROW(hermite_eval(-1, 0.1), std::domain_error);
  EXPECT_THROW(hermite_eval(190, Amplitude{50.0, 0.0}), std::overflow_error);
}

TEST(Hermite, ScaledFormAgreesAndReachesHighOrders) {
  const Amplitude z{1.3, -0.6};
  for (int n : {0, 1, 7, 40, 120}) {
    const ScaledComplex s = hermite_scaled(n, z);
    const Amplitude plain = hermite_eval(n, z);
    EXPECT_NEAR(s.log_abs(), std::log(std::abs(plain)), 1e-12 * std::max(1.0, s.log_abs()));
    EXPECT_LE(std::abs(std::ldexp(1.0, static_cast<int>(s.exponent)) * s.mantissa - plain),
              1e-12 * std::abs(plain));
  }
  // Far past the double range: check H_{n+1} = 2z H_n - 2n H_{n-1} on the
  // scaled values, aligned to a common exponent.
  const Amplitude w{40.0, 3.0};
  const int n = 5000;
  const ScaledComplex lo = hermite_scaled(n - 1, w), mid = hermite_scaled(n, w),
                      hi = hermite_scaled(n + 1, w);
  ASSERT_TRUE(std::isfinite(hi.log_abs()));
  auto at = [&](const ScaledComplex& h) {
    return std::ldexp(1.0, static_cast<int>(h.exponent - hi.exponent)) * h.mantissa;
  };
  const Amplitude rhs = 2.0 * w * at(mid) - 2.0 * n * at(lo);
  EXPECT_LE(std::abs(at(hi) - rhs), 1e-10 * std::abs(at(hi)));
}

TEST(Hermite, StreamMatchesScaled) {
  const Amplitude z{-0.4, 1.9};
  HermiteRecurrence h(z);
  for (int n = 0; n < 300; ++n) {
    EXPECT_EQ(h.order(), n);
    EXPECT_NEAR(h.value().log_abs(), hermite_scaled(n, z).log_abs(), 1e-9);
    h.advance();
  }
}

struct FockCase {
  double r, phi;
  Amplitude beta;
};

class SqueezedCoherentFock : public ::testing::TestWithParam<FockCase> {};

TEST_P(SqueezedCoherentFock, MatchesMatrixExponentialOracle) {
  const auto [r, phi, beta] = GetParam();
  const FockVector state = squeezed_coherent_fock({r, phi}, beta, 40);
  const auto ref = oracle::squeezed_coherent_expm(std::polar(r, phi), beta, 41);
  for (int n = 0; n <= 40; ++n)
    EXPECT_NEAR(std::abs(state.coeffs[n] - ref[n]), 0.0, 1e-10) << "n=" << n;
}

TEST_P(SqueezedCoherentFock, NormalisedAndMeanPhotonNumber) {
  const auto [r, phi, beta] = GetParam();
  const FockVector state = squeezed_coherent_fock({r, phi}, beta, 400);
  double norm = 0.0, mean = 0.0;
  for (int n = 0; n <= state.n_max(); ++n) {
    norm += state.population(n);
    mean += n * state.population(n);
  }
  EXPECT_NEAR(norm + state.tail_norm, 1.0, 1e-12);
  EXPECT_NEAR(norm, 1.0, 1e-10);
  EXPECT_NEAR(mean, squeezed_coherent_mean_photons({r, phi}, beta), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(
    Grid, SqueezedCoherentFock,
    ::testing::Values(FockCase{0.0, 0.0, {1.0, 0.5}}, FockCase{0.2, 0.0, {0.0, 0.0}},
                      FockCase{0.5, 1.0, {1.2, -0.3}}, FockCase{1.0, 3.5, {-0.7, 1.4}},
                      FockCase{0.8, 5.9, {0.0, -2.0}}, FockCase{1e-10, 2.0, {1.5, 0.0}},
                      FockCase{0.3, 0.0, {2.0, 0.0}}));

TEST(SqueezedCoherentFockProps, CoherentLimitIsPoissonian) {
  const Amplitude beta{1.7, -0.9};
  const FockVector state = coherent_fock(beta, 60);
  const double m = std::norm(beta);
  for (int n = 0; n <= 60; ++n)
    EXPECT_NEAR(state.population(n), std::exp(-m + n * std::log(m) - std::lgamma(n + 1.0)), 1e-14);
}

TEST(SqueezedCoherentFockProps, SmallSqueezingIsContinuous) {
  const Amplitude beta{0.8, 0.6};
  const FockVector a = squeezed_coherent_fock({0.0, 0.7}, beta, 30);
  const FockVector b = squeezed_coherent_fock({1e-9, 0.7}, beta, 30);
  for (int n = 0; n <= 30; ++n) EXPECT_NEAR(std::abs(a.coeffs[n] - b.coeffs[n]), 0.0, 1e-8);
}

TEST(SqueezedCoherentFockProps, PhaseIsPeriodic) {
  const Amplitude beta{0.4, 1.1};
  const FockVector a = squeezed_coherent_fock({0.6, 0.3}, beta, 50);
  const FockVector b = squeezed_coherent_fock({0.6, 0.3 + 2.0 * std::acos(-1.0)}, beta, 50);
  for (int n = 0; n <= 50; ++n) EXPECT_NEAR(std::abs(a.coeffs[n] - b.coeffs[n]), 0.0, 1e-12);
}

TEST(SqueezedCoherentFockProps, LargeAmplitudeDoesNotOverflow) {
  const FockVector state = squeezed_coherent_fock({0.5, 0.0}, Amplitude{25.0, 0.0}, 3000);
  double norm = 0.0;
  for (const auto& c : state.coeffs) {
    ASSERT_TRUE(std::isfinite(c.real()) && std::isfinite(c.imag()));
    norm += std::norm(c);
  }
  EXPECT_NEAR(norm, 1.0, 1e-9);
}

TEST(SqueezedCoherentFockProps, RejectsNegativeCutoff) {
  EXPECT_THROW(squeezed_coherent_fock({0.1, 0.0}, 1.0, -1), std::invalid_argument);
}

TEST(PskAlphabetTest, QpskSymbolsAndSeparations) {
  const auto a = PskAlphabet::qpsk(2.0);
  EXPECT_EQ(a.order(), 4);
  EXPECT_DOUBLE_EQ(a.mean_photons(), 2.0);
  const double alpha = std::sqrt(2.0);
  EXPECT_EQ(a.symbol(0), Amplitude(alpha, 0.0));
  EXPECT_EQ(a.symbol(1), Amplitude(0.0, alpha));
  EXPECT_EQ(a.symbol(2), Amplitude(-alpha, 0.0));
  EXPECT_EQ(a.symbol(3), Amplitude(0.0, -alpha));
  for (int m = 0; m < 4; ++m) {
    EXPECT_EQ(a.separation_sq(m, m), 0.0);
    EXPECT_EQ(a.separation_sq(m, (m + 1) % 4), a.separation_sq(m, (m + 3) % 4));
    EXPECT_NEAR(a.separation_sq(m, (m + 2) % 4), 8.0, 1e-14);
    EXPECT_NEAR(a.separation_sq(m, (m + 1) % 4), 4.0, 1e-14);
  }
}

TEST(PskAlphabetTest, PriorsValidated) {
  EXPECT_TRUE(PskAlphabet::qpsk(1.0).uniform_priors());
  EXPECT_THROW(PskAlphabet(4, 1.0, {0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(PskAlphabet(4, 1.0, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(PskAlphabet(0, 1.0), std::invalid_argument);
  EXPECT_THROW(PskAlphabet::qpsk(-1.0), std::invalid_argument);
  EXPECT_FALSE(PskAlphabet(4, 1.0, {0.4, 0.2, 0.2, 0.2}).uniform_priors());
}

TEST(CoherentOverlap, ModulusAndPhase) {
  const Amplitude a{0.3, 1.2}, b{-0.5, 0.4};
  const Amplitude ov = coherent_overlap(a, b);
  EXPECT_NEAR(std::norm(ov), std::exp(-std::norm(a - b)), 1e-15);
  // <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
  EXPECT_NEAR(std::abs(ov - std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b)),
              0.0, 1e-15);
  const FockVector fa = coherent_fock(a, 60), fb = coherent_fock(b, 60);
  Amplitude sum{};
  for (int n = 0; n <= 60; ++n) sum += std::conj(fa.coeffs[n]) * fb.coeffs[n];
  EXPECT_NEAR(std::abs(sum - ov), 0.0, 1e-14);
}

}  // namespace
}  // namespace qrx
