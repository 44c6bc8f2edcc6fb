#pragma once

// Off-diagonal (coherence) dynamics of a driven two-level atom in a thermal
// bosonic reservoir. The off-diagonal element obeys
//
//   d rho01 / dt = -Gamma(t) rho01,
//   Gamma(t) = 2 [ (sin(w0 t)/w0) (d^2/4) |E(t)|^2 + R(t) ],
//
// with R(t) the reservoir rate (see reservoir.hpp) and |E(t)|^2 the
// intensity envelope of an external driving field. Choosing
//
//   |E(t)|^2 = -(4/d^2) (w0 / sin(w0 t)) R(t)
//
// cancels the bracket and freezes the coherence. That solution is only
// physical where the right-hand side is nonnegative; null_field() computes
// it per sample and classifies each point.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohpol/numerics.hpp"
#include "cohpol/reservoir.hpp"

namespace cohpol {

struct DrivenAtomParams {
  double omega0 = 1.0;  // transition frequency, > 0
  double d = 1.0;       // dipole matrix element magnitude, != 0

  void validate() const {
    if (!(omega0 > 0.0))
      throw std::domain_error("atom.omega0 must be > 0");
    if (d == 0.0 || !std::isfinite(d))
      throw std::domain_error("atom.d must be nonzero and finite");
  }
};

enum class Feasibility {
  kFeasible,            // finite sample with |E|^2 >= 0
  kInfeasibleNegative,  // finite sample but |E|^2 < 0
  kSingular,            // sin(w0 t) ~ 0 against a nonvanishing reservoir rate
  kIndeterminate,       // both factors below threshold (0/0 at the sample)
};

inline const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible: return "FEASIBLE";
    case Feasibility::kInfeasibleNegative: return "INFEASIBLE_NEGATIVE";
    case Feasibility::kSingular: return "SINGULAR";
    case Feasibility::kIndeterminate: return "INDETERMINATE";
  }
  return "UNKNOWN";
}

// Sampled intensity envelope |E(t)|^2 with per-sample feasibility flags.
// Evaluation between samples is piecewise linear; outside the sampled
// range it is an error (no extrapolation).
struct Envelope {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<Feasibility> flags;

  void validate() const {
    detail::check_increasing(times);
    if (values.size() != times.size())
      throw std::invalid_argument("envelope: values/times size mismatch");
    if (!flags.empty() && flags.size() != times.size())
      throw std::invalid_argument("envelope: flags/times size mismatch");
  }

  double operator()(double t) const {
    if (times.empty()) throw std::invalid_argument("empty envelope");
    if (t < times.front() || t > times.back())
      throw std::out_of_range("envelope evaluated outside sampled range");
    // Find the interval [times[i], times[i+1]] containing t.
    std::size_t lo = 0, hi = times.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (times[mid] <= t)
        lo = mid;
      else
        hi = mid;
    }
    if (t == times[lo]) return values[lo];
    if (t == times[hi]) return values[hi];
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
  }
};

inline Envelope zero_envelope(const std::vector<double>& grid) {
  detail::check_increasing(grid);
  Envelope env;
  env.times = grid;
  env.values.assign(grid.size(), 0.0);
  env.flags.assign(grid.size(), Feasibility::kFeasible);
  return env;
}

struct FeasibilityReport {
  double sin_threshold = 1e-6;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<Feasibility> flags;

  std::size_t count(Feasibility f) const {
    std::size_t n = 0;
    for (auto x : flags) n += (x == f);
    return n;
  }
  bool all_feasible() const {
    return count(Feasibility::kFeasible) == flags.size();
  }
};

struct NullFieldResult {
  Envelope envelope;
  FeasibilityReport report;
};

// Solve the freezing condition for |E(t)|^2 on each grid point and
// classify. Near zeros of sin(w0 t) the division is unreliable:
// |sin(w0 t)| < sin_threshold is flagged SINGULAR when the reservoir rate
// is above the same threshold (a genuine pole) and INDETERMINATE when both
// factors are small (limit exists but is not resolved here); those samples
// store the value 0.
inline NullFieldResult null_field(const DrivenAtomParams& atom,
                                  const ReservoirSpec& bath,
                                  const std::vector<double>& grid,
                                  double sin_threshold = 1e-6) {
  atom.validate();
  bath.validate();
  detail::check_increasing(grid);
  if (!(sin_threshold > 0.0))
    throw std::invalid_argument("sin_threshold must be > 0");

  NullFieldResult out;
  out.report.sin_threshold = sin_threshold;
  out.report.times = grid;
  out.envelope.times = grid;
  out.envelope.values.reserve(grid.size());
  out.envelope.flags.reserve(grid.size());

  const double scale = 4.0 / (atom.d * atom.d);
  for (double t : grid) {
    const double s = std::sin(atom.omega0 * t);
    const double rate = reservoir_rate(bath, t);
    double value = 0.0;
    Feasibility flag;
    if (std::abs(s) >= sin_threshold) {
      value = -scale * (atom.omega0 / s) * rate;
      flag = value >= 0.0 ? Feasibility::kFeasible
                          : Feasibility::kInfeasibleNegative;
    } else {
      flag = std::abs(rate) >= sin_threshold ? Feasibility::kSingular
                                             : Feasibility::kIndeterminate;
    }
    out.envelope.values.push_back(value);
    out.envelope.flags.push_back(flag);
  }
  out.report.values = out.envelope.values;
  out.report.flags = out.envelope.flags;
  return out;
}

// Total off-diagonal decay rate Gamma(t). With |E|^2 == 0 this is exactly
// twice the reservoir rate.
inline double total_rate(const DrivenAtomParams& atom, const Envelope& env,
                         const ReservoirSpec& bath, double t) {
  atom.validate();
  const double drive =
      (std::sin(atom.omega0 * t) / atom.omega0) * (atom.d * atom.d / 4.0) *
      env(t);
  return 2.0 * (drive + reservoir_rate(bath, t));
}

struct OffDiagState {
  Complex rho01{0.0, 0.0};
  Complex rho10{0.0, 0.0};
};

// Trajectory of the off-diagonal pair. `states` is the quadrature solution
//   rho01(t) = rho01(0) exp(-int_0^t Gamma),   (trapezoid on the grid)
// which is the public result; `rk4_states` integrates the same ODE with
// RK4 as an independent cross-check. `gamma` holds Gamma at the grid
// points.
struct OffDiagTrajectory {
  std::vector<double> times;
  std::vector<OffDiagState> states;
  std::vector<OffDiagState> rk4_states;
  std::vector<double> gamma;
};

inline OffDiagTrajectory evolve_offdiag(const DrivenAtomParams& atom,
                                        const Envelope& env,
                                        const ReservoirSpec& bath,
                                        const OffDiagState& rho0,
                                        const std::vector<double>& grid) {
  atom.validate();
  bath.validate();
  env.validate();
  detail::check_increasing(grid);
  if (grid.front() != env.times.front())
    throw std::invalid_argument(
        "grid mismatch with env: evolution must start at the envelope start");
  if (grid.back() > env.times.back())
    throw std::invalid_argument(
        "grid mismatch with env: evolution grid leaves the sampled envelope");

  OffDiagTrajectory traj;
  traj.times = grid;
  traj.gamma.reserve(grid.size());
  for (double t : grid) traj.gamma.push_back(total_rate(atom, env, bath, t));

  // Quadrature solution: cumulative trapezoid of Gamma, then exp(-I).
  const std::vector<double> integral = cumulative_trapezoid(traj.gamma, grid);
  traj.states.reserve(grid.size());
  for (double I : integral) {
    const double damp = std::exp(-I);
    traj.states.push_back({rho0.rho01 * damp, rho0.rho10 * damp});
  }

  // RK4 cross-check on the same grid (midpoints interpolate the envelope).
  const Rhs rhs = [&](double t, const State& y, State& dydt) {
    const double gamma = total_rate(atom, env, bath, t);
    dydt[0] = -gamma * y[0];
    dydt[1] = -gamma * y[1];
  };
  const Trajectory rk = rk4_integrate(rhs, {rho0.rho01, rho0.rho10}, grid);
  traj.rk4_states.reserve(grid.size());
  for (const auto& s : rk.states) traj.rk4_states.push_back({s[0], s[1]});

  return traj;
}

}  // namespace cohpol
