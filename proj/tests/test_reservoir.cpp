#include "cohpol/reservoir.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using cohpol::bose_occupation;
using cohpol::kernel_terms;
using cohpol::reservoir_rate;
using cohpol::ReservoirMode;
using cohpol::ReservoirSpec;

// T = 1/ln 2 puts exactly one quantum in a unit-frequency mode.
TEST(BoseOccupationTest, KnownValues) {
  EXPECT_NEAR(bose_occupation(1.0, 1.0 / std::log(2.0)), 1.0, 1e-14);
  EXPECT_EQ(bose_occupation(1.0, 0.0), 0.0);
  EXPECT_NEAR(bose_occupation(1.0, 1.0 / std::log(1.5)), 2.0, 1e-13);
}

TEST(BoseOccupationTest, DomainErrors) {
  EXPECT_THROW(bose_occupation(0.0, 1.0), std::domain_error);
  EXPECT_THROW(bose_occupation(-1.0, 1.0), std::domain_error);
  EXPECT_THROW(bose_occupation(1.0, -0.5), std::domain_error);
}

TEST(BoseOccupationTest, MonotoneInTemperatureAndFrequency) {
  double prev = -1.0;
  for (double T : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double n = bose_occupation(1.0, T);
    EXPECT_GT(n, prev);
    prev = n;
  }
  prev = 1e300;
  for (double w : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double n = bose_occupation(w, 1.0);
    EXPECT_LT(n, prev);
    prev = n;
  }
}

TEST(BoseOccupationTest, LargeRatioUnderflowsToZeroWithoutError) {
  EXPECT_EQ(bose_occupation(1000.0, 1.0), 0.0);
}

// Single vacuum mode at w = 1, g = 1, t = pi/2: the four terms reduce to
// a1 = 1 - i, a3 = 1 + i, a2 = a4 = 0, total = 2.
TEST(KernelTermsTest, SingleVacuumModeAtQuarterPeriod) {
  const ReservoirSpec spec{{{1.0, 1.0}}, 0.0};
  const auto kt = kernel_terms(spec, M_PI / 2.0);
  EXPECT_NEAR(kt.a1.real(), 1.0, 1e-15);
  EXPECT_NEAR(kt.a1.imag(), -1.0, 1e-15);
  EXPECT_NEAR(kt.a3.real(), 1.0, 1e-15);
  EXPECT_NEAR(kt.a3.imag(), 1.0, 1e-15);
  EXPECT_EQ(kt.a2, cohpol::Complex(0.0, 0.0));
  EXPECT_EQ(kt.a4, cohpol::Complex(0.0, 0.0));
  EXPECT_NEAR(kt.total.real(), 2.0, 1e-14);
  EXPECT_NEAR(kt.total.imag(), 0.0, 1e-15);
}

TEST(KernelTermsTest, AllTermsVanishAtTimeZero) {
  const ReservoirSpec spec{{{1.3, 0.8}, {2.7, 0.4}}, 1.5};
  const auto kt = kernel_terms(spec, 0.0);
  EXPECT_EQ(kt.a1, cohpol::Complex(0.0, 0.0));
  EXPECT_EQ(kt.a2, cohpol::Complex(0.0, 0.0));
  EXPECT_EQ(kt.a3, cohpol::Complex(0.0, 0.0));
  EXPECT_EQ(kt.a4, cohpol::Complex(0.0, 0.0));
  EXPECT_EQ(kt.total, cohpol::Complex(0.0, 0.0));
}

TEST(KernelTermsTest, TotalIsTheLeftToRightSum) {
  const ReservoirSpec spec{{{0.9, 1.1}, {2.2, 0.3}}, 0.7};
  const auto kt = kernel_terms(spec, 1.234);
  // Bitwise identity: no reordering of the accumulation.
  EXPECT_EQ(kt.total, ((kt.a1 + kt.a2) + kt.a3) + kt.a4);
}

TEST(KernelTermsTest, RejectsInvalidSpec) {
  EXPECT_THROW(kernel_terms({{{-1.0, 1.0}}, 0.0}, 1.0), std::domain_error);
  EXPECT_THROW(kernel_terms({{{1.0, 1.0}}, -1.0}, 1.0), std::domain_error);
}

// Property sweep: the total is real, equals the direct rate formula, and
// is odd in t, across temperatures and multi-mode baths.
TEST(KernelTermsTest, TotalRealAndMatchesRate) {
  const std::vector<ReservoirSpec> specs = {
      {{{1.0, 1.0}}, 0.0},
      {{{0.3, 0.5}, {1.0, 1.2}, {2.7, 0.8}}, 0.0},
      {{{0.3, 0.5}, {1.0, 1.2}, {2.7, 0.8}}, 0.7},
      {{{0.5, 2.0}, {4.0, 0.1}}, 3.0},
  };
  for (const auto& spec : specs) {
    for (double t : {-2.1, -0.4, 0.0, 0.9, 3.3, 7.7}) {
      const auto kt = kernel_terms(spec, t);
      const double rate = reservoir_rate(spec, t);
      EXPECT_LT(std::abs(kt.total.imag()), 1e-12 * (1.0 + std::abs(kt.total)))
          << "t = " << t;
      EXPECT_NEAR(kt.total.real(), rate,
                  1e-12 * (1.0 + std::abs(rate)))
          << "t = " << t;
      EXPECT_NEAR(reservoir_rate(spec, -t), -rate,
                  1e-13 * (1.0 + std::abs(rate)));
    }
  }
}

// One vacuum mode at w = 1, g = 1: rate is exactly 2 sin t.
TEST(ReservoirRateTest, SingleModeClosedForm) {
  const ReservoirSpec spec{{{1.0, 1.0}}, 0.0};
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.5}) {
    EXPECT_NEAR(reservoir_rate(spec, t), 2.0 * std::sin(t), 1e-14);
  }
}

TEST(ReservoirRateTest, AdditiveOverModes) {
  const ReservoirSpec both{{{1.1, 0.7}, {2.4, 1.3}}, 1.2};
  const ReservoirSpec first{{{1.1, 0.7}}, 1.2};
  const ReservoirSpec second{{{2.4, 1.3}}, 1.2};
  for (double t : {0.3, 1.7, 5.2}) {
    EXPECT_NEAR(reservoir_rate(both, t),
                reservoir_rate(first, t) + reservoir_rate(second, t), 1e-14);
  }
}

TEST(ReservoirRateTest, EmptyBathHasZeroRate) {
  const ReservoirSpec spec{{}, 0.0};
  EXPECT_EQ(reservoir_rate(spec, 1.0), 0.0);
  EXPECT_EQ(kernel_terms(spec, 1.0).total, cohpol::Complex(0.0, 0.0));
}

}  // namespace
