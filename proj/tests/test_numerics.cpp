#include "cohpol/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

namespace {

using cohpol::Complex;
using cohpol::Rhs;
using cohpol::State;
using cohpol::TimeGrid;

TEST(TimeGridTest, RegularSpacing) {
  const auto pts = TimeGrid{0.0, 1.0, 0.25}.points();
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts[0], 0.0);
  EXPECT_DOUBLE_EQ(pts[1], 0.25);
  EXPECT_DOUBLE_EQ(pts[2], 0.5);
  EXPECT_DOUBLE_EQ(pts[3], 0.75);
  EXPECT_DOUBLE_EQ(pts[4], 1.0);
}

TEST(TimeGridTest, LastPointClampedToStop) {
  const auto pts = TimeGrid{0.0, 1.0, 0.3}.points();
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts.back(), 1.0);
  // Interior points are exact multiples of the step.
  EXPECT_DOUBLE_EQ(pts[3], 0.3 * 3.0);
}

TEST(TimeGridTest, EndpointHitExactlyIsNotDuplicated) {
  const auto pts = TimeGrid{0.0, 0.5, 0.1}.points();
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_DOUBLE_EQ(pts.back(), 0.5);
  EXPECT_LT(pts[4], pts[5]);
}

TEST(TimeGridTest, RejectsBadParameters) {
  EXPECT_THROW(TimeGrid({0.0, 1.0, 0.0}).points(), std::invalid_argument);
  EXPECT_THROW(TimeGrid({0.0, 1.0, -0.1}).points(), std::invalid_argument);
  EXPECT_THROW(TimeGrid({1.0, 1.0, 0.1}).points(), std::invalid_argument);
  EXPECT_THROW(TimeGrid({2.0, 1.0, 0.1}).points(), std::invalid_argument);
}

// y' = -y from y(0) = 1: exact solution e^{-t}.
TEST(Rk4Test, ExponentialDecay) {
  const Rhs f = [](double, const State& y, State& dydt) { dydt[0] = -y[0]; };
  const auto pts = TimeGrid{0.0, 1.0, 1e-3}.points();
  const auto traj = cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
  EXPECT_NEAR(traj.states.back()[0].real(), std::exp(-1.0), 1e-10);
  EXPECT_DOUBLE_EQ(traj.states.back()[0].imag(), 0.0);
}

// y' = 2 t y from y(0) = 1: exact solution e^{t^2}.
TEST(Rk4Test, TimeDependentCoefficient) {
  const Rhs f = [](double t, const State& y, State& dydt) {
    dydt[0] = 2.0 * t * y[0];
  };
  const auto pts = TimeGrid{0.0, 1.0, 1e-3}.points();
  const auto traj = cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
  EXPECT_NEAR(traj.states.back()[0].real(), std::exp(1.0), 1e-8);
}

// Halving the step of a 4th-order scheme must shrink the global error by
// about 2^4; the ratio window [12, 20] tolerates the higher-order terms.
TEST(Rk4Test, FourthOrderConvergence) {
  const Rhs f = [](double, const State& y, State& dydt) { dydt[0] = -y[0]; };
  const double exact = std::exp(-1.0);
  auto global_error = [&](double h) {
    const auto pts = TimeGrid{0.0, 1.0, h}.points();
    const auto traj = cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
    return std::abs(traj.states.back()[0] - Complex{exact, 0.0});
  };
  const double ratio = global_error(0.02) / global_error(0.01);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Rk4Test, DeterministicAcrossRuns) {
  const Rhs f = [](double t, const State& y, State& dydt) {
    dydt[0] = Complex{0.0, 1.0} * std::sin(3.0 * t) * y[0] - 0.2 * y[0];
  };
  const auto pts = TimeGrid{0.0, 2.0, 1e-3}.points();
  const auto a = cohpol::rk4_integrate(f, {Complex{0.3, 0.7}}, pts);
  const auto b = cohpol::rk4_integrate(f, {Complex{0.3, 0.7}}, pts);
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    EXPECT_EQ(std::memcmp(a.states[i].data(), b.states[i].data(),
                          sizeof(Complex) * a.states[i].size()),
              0);
  }
}

// y' = y^2 blows up at t = 1; the integrator must refuse to carry
// non-finite values and report where it stopped.
TEST(Rk4Test, AbortsOnNonFiniteState) {
  const Rhs f = [](double, const State& y, State& dydt) {
    dydt[0] = y[0] * y[0];
  };
  const auto pts = TimeGrid{0.0, 2.0, 1e-3}.points();
  try {
    cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
    FAIL() << "expected NumericalAbort";
  } catch (const cohpol::NumericalAbort& e) {
    EXPECT_GT(e.time(), 0.9);
    EXPECT_LT(e.time(), 1.5);
    EXPECT_NE(std::string(e.what()).find("non-finite"), std::string::npos);
  }
}

TEST(Rk4Test, ObserverCanAbort) {
  const Rhs f = [](double, const State& y, State& dydt) { dydt[0] = y[0]; };
  const auto pts = TimeGrid{0.0, 5.0, 1e-2}.points();
  const auto guard = [](double t, const State& y) {
    if (std::abs(y[0]) > 10.0)
      throw cohpol::NumericalAbort("guard tripped", t);
  };
  try {
    cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts, guard);
    FAIL() << "expected NumericalAbort";
  } catch (const cohpol::NumericalAbort& e) {
    // e^t > 10 at t = ln 10 = 2.303
    EXPECT_NEAR(e.time(), std::log(10.0), 0.02);
  }
}

// Trapezoid is exact for affine integrands, on irregular grids too.
TEST(TrapezoidTest, ExactForAffine) {
  const std::vector<double> t{0.0, 0.3, 0.45, 1.1, 2.0};
  std::vector<double> vals;
  for (double x : t) vals.push_back(2.0 * x + 1.0);
  // integral of 2x + 1 over [0, 2] = 4 + 2 = 6
  EXPECT_DOUBLE_EQ(cohpol::trapezoid(vals, t), 6.0);
}

TEST(TrapezoidTest, ComplexValues) {
  const std::vector<double> t{0.0, 0.5, 1.0};
  const std::vector<Complex> vals{{0.0, 1.0}, {0.5, 1.0}, {1.0, 1.0}};
  const Complex integral = cohpol::trapezoid(vals, t);
  EXPECT_DOUBLE_EQ(integral.real(), 0.5);
  EXPECT_DOUBLE_EQ(integral.imag(), 1.0);
}

TEST(TrapezoidTest, RejectsTooFewSamples) {
  EXPECT_THROW(cohpol::trapezoid(std::vector<double>{1.0},
                                 std::vector<double>{0.0}),
               std::invalid_argument);
}

TEST(TrapezoidTest, CumulativeMatchesTotal) {
  const auto t = TimeGrid{0.0, 3.0, 0.01}.points();
  std::vector<double> vals;
  for (double x : t) vals.push_back(std::sin(x));
  const auto cum = cohpol::cumulative_trapezoid(vals, t);
  EXPECT_DOUBLE_EQ(cum.back(), cohpol::trapezoid(vals, t));
  EXPECT_NEAR(cum.back(), 1.0 - std::cos(3.0), 1e-4);
}

// A trajectory produced by RK4 on step h must pass a central-difference
// consistency check at the O(h^2) level of the difference stencil itself.
TEST(FiniteDiffTest, ValidatesIntegratorOutput) {
  const Rhs f = [](double, const State& y, State& dydt) { dydt[0] = -y[0]; };
  const double h = 1e-3;
  const auto pts = TimeGrid{0.0, 1.0, h}.points();
  const auto traj = cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
  const double resid = cohpol::finite_diff_check(traj, f);
  EXPECT_LT(resid, 10.0 * h * h);
  EXPECT_GT(resid, 0.0);  // the stencil error is real, not zero
}

TEST(FiniteDiffTest, FlagsWrongDynamics) {
  const Rhs f = [](double, const State& y, State& dydt) { dydt[0] = -y[0]; };
  const Rhs wrong = [](double, const State& y, State& dydt) {
    dydt[0] = -2.0 * y[0];
  };
  const auto pts = TimeGrid{0.0, 1.0, 1e-3}.points();
  const auto traj = cohpol::rk4_integrate(f, {Complex{1.0, 0.0}}, pts);
  EXPECT_GT(cohpol::finite_diff_check(traj, wrong), 0.1);
}

}  // namespace
