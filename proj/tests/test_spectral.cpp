#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "frozen_values.hpp"
#include "rindler/spectral.hpp"

using namespace rindler::spectral;

TEST(SqueezeParam, SmallArgumentLimit) {
  EXPECT_NEAR(squeeze_param(10.0, 1.0) / frozen::kR_Ten, 1.0, 1e-12);
  EXPECT_NEAR(squeeze_param(10.0, 1.0), std::exp(-10.0 * std::numbers::pi), 1e-26);
}

TEST(SqueezeParam, FrozenValues) {
  EXPECT_NEAR(squeeze_param(std::log(2.0) / std::numbers::pi, 1.0), frozen::kR_Ln2OverPi, 1e-15);
  EXPECT_NEAR(squeeze_param(1.0, 1.0), frozen::kR_One, 1e-16);
  // Only the ratio omega/a matters.
  EXPECT_NEAR(squeeze_param(3.0, 3.0), frozen::kR_One, 1e-16);
}

TEST(SqueezeParam, RejectsNonPositiveArguments) {
  EXPECT_THROW(squeeze_param(0.0, 1.0), std::domain_error);
  EXPECT_THROW(squeeze_param(1.0, 0.0), std::domain_error);
  EXPECT_THROW(squeeze_param(-1.0, 1.0), std::domain_error);
  EXPECT_THROW(squeeze_param(std::nan(""), 1.0), std::domain_error);
}

TEST(UnruhFactors, HyperbolicIdentities) {
  for (double ratio : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 30.0}) {
    const auto f = unruh_factors(ratio, 1.0);
    const double r = squeeze_param(ratio, 1.0);
    EXPECT_NEAR(f.cosh_r * f.cosh_r - f.sinh_r * f.sinh_r, 1.0, 1e-9 * f.cosh_r * f.cosh_r);
    EXPECT_NEAR(f.exp_mr, std::exp(-r), 1e-14);
    EXPECT_NEAR(f.sinh_r / f.cosh_r, f.x, 1e-15);
  }
  const auto half = unruh_factors(std::log(2.0) / std::numbers::pi, 1.0);
  EXPECT_NEAR(half.cosh_r, 2.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(half.sinh_r, 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Wavepacket, NormalisedOnItsGrid) {
  const auto wp = make_wavepacket(1.0, 0.05, 256);
  EXPECT_NEAR(wp.grid_average([](double) { return 1.0; }), 1.0, 1e-10);
  EXPECT_FALSE(wp.truncation_warning);
  EXPECT_NEAR(wp.lower, 0.6, 1e-15);
  EXPECT_NEAR(wp.upper, 1.4, 1e-15);
}

TEST(Wavepacket, NarrowbandAverageApproachesMidpoint) {
  const auto wp = make_wavepacket(1.0, 0.01);
  auto f = [](double w) { return std::cosh(w) + w * w; };
  const double avg = wp.grid_average(f);
  EXPECT_LT(std::abs(avg - f(1.0)) / f(1.0), 1e-3);
}

TEST(Wavepacket, TruncationWarningForWidePacket) {
  const auto wp = make_wavepacket(0.5, 0.4);
  EXPECT_TRUE(wp.truncation_warning);
  EXPECT_NEAR(wp.truncated_mass, frozen::kMassBelowZero_05_04, 1e-12);
  EXPECT_NEAR(wp.lower, 0.5e-12, 1e-20);
  EXPECT_NEAR(wp.grid_average([](double) { return 1.0; }), 1.0, 1e-10);
}

TEST(Wavepacket, RejectsInvalidArguments) {
  EXPECT_THROW(make_wavepacket(0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(make_wavepacket(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(make_wavepacket(1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(make_wavepacket(1.0, 0.1, 4), std::invalid_argument);
}

class FrozenIntegrals : public ::testing::TestWithParam<frozen::Integrals> {};

TEST_P(FrozenIntegrals, MatchHighPrecisionReference) {
  const auto ref = GetParam();
  const auto s = spectral_integrals(make_wavepacket(ref.omega0, ref.sigma), ref.a);
  EXPECT_NEAR(s.i_c, ref.i_c, 1e-9 * ref.i_c);
  EXPECT_NEAR(s.i_s, ref.i_s, 1e-9 * ref.i_c);
  EXPECT_NEAR(s.i_cs, ref.i_cs, 1e-9);
  EXPECT_NEAR(s.phi_cs, ref.phi_cs, 1e-9);
  EXPECT_NEAR(s.i_c - s.i_s, 1.0, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Spectral, FrozenIntegrals,
                         ::testing::Values(frozen::kNarrow_1_001_1, frozen::kWide_1_005_20,
                                           frozen::kWide_1_005_1, frozen::kWide_1_005_0001));

TEST(SpectralIntegrals, NarrowbandNearExpMinus2R0) {
  const auto s = spectral_integrals(make_wavepacket(1.0, 0.01), 1.0);
  EXPECT_NEAR(s.i_cs, frozen::kExpMinus2R0, 1e-3);
}

TEST(SpectralIntegrals, IdentityHoldsAcrossAccelerations) {
  const auto wp = make_wavepacket(1.0, 0.05);
  for (double a : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const auto s = spectral_integrals(wp, a);
    EXPECT_NEAR(s.i_c - s.i_s, 1.0, 1e-8) << "a = " << a;
  }
}

TEST(SpectralIntegrals, MonotoneInAcceleration) {
  const auto wp = make_wavepacket(1.0, 0.05);
  double prev_cs = 2.0;
  double prev_c = 0.0;
  for (double a = 0.2; a < 60.0; a *= 1.5) {
    const auto s = spectral_integrals(wp, a);
    EXPECT_LT(s.i_cs, prev_cs) << "a = " << a;
    EXPECT_GT(s.i_c, prev_c) << "a = " << a;
    prev_cs = s.i_cs;
    prev_c = s.i_c;
  }
}

TEST(SpectralIntegrals, ConvergeToMidpointAsBandwidthShrinks) {
  const double a = 2.0;
  const auto f = unruh_factors(1.0, a);
  double prev = 1.0;
  for (double rel : {0.1, 0.01, 0.001}) {
    const auto s = spectral_integrals(make_wavepacket(1.0, rel), a);
    const double err = std::abs(s.i_c - f.cosh_r * f.cosh_r);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(SpectralIntegrals, ReportsNonConvergence) {
  QuadratureOptions tight;
  tight.max_panels = 1;
  tight.rel_tol = 1e-15;
  EXPECT_THROW(spectral_integrals(make_wavepacket(0.5, 0.4), 5.0, tight), ConvergenceError);
}

TEST(SpectralIntegrals, RejectsNonPositiveAcceleration) {
  EXPECT_THROW(spectral_integrals(make_wavepacket(1.0, 0.05), 0.0), std::domain_error);
}
