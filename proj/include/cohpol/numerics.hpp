#pragma once

// Fixed-step integration utilities: uniform time grids, the classic
// four-stage Runge-Kutta scheme over complex state vectors, composite
// trapezoid quadrature and a finite-difference consistency check.
//
// Everything here is deterministic: no adaptive step control, fixed
// summation order, so repeated runs produce bit-identical results.

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohpol {

using Complex = std::complex<double>;
using State = std::vector<Complex>;

// Thrown when an integration or evolution leaves the representable /
// trusted range (non-finite values, growth guard). Carries the time at
// which the abort happened so drivers can report it.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

// Uniform sampling of [start, stop]: points are start + i*step with the
// last point clamped to stop, so the final interval may be short.
struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 1e-2;

  void validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("grid.step must be > 0");
    if (!(stop > start))
      throw std::invalid_argument("grid.stop must be > grid.start");
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> t;
    const double guard = step * 1e-9;  // absorbs roundoff in start + i*step
    for (std::size_t i = 0;; ++i) {
      const double ti = start + static_cast<double>(i) * step;
      if (ti >= stop - guard) break;
      t.push_back(ti);
    }
    t.push_back(stop);
    return t;
  }
};

// Right-hand side writes dy/dt into `dydt` (already sized like `y`).
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

// Called on the initial state and after every accepted step; may throw to
// abort the integration (e.g. growth guards).
using StepObserver = std::function<void(double t, const State& y)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
};

namespace detail {

inline void check_increasing(const std::vector<double>& t) {
  if (t.size() < 2)
    throw std::invalid_argument("time grid needs at least 2 points");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
}

inline bool finite(const State& y) {
  for (const auto& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace detail

// Classic RK4 with one step per grid interval. The grid may be irregular;
// callers choose the resolution. Aborts (NumericalAbort) as soon as any
// state component stops being finite.
inline Trajectory rk4_integrate(const Rhs& f, const State& y0,
                                const std::vector<double>& times,
                                const StepObserver& after_step = nullptr) {
  detail::check_increasing(times);
  if (y0.empty()) throw std::invalid_argument("empty initial state");

  const std::size_t n = y0.size();
  State y = y0, k1(n), k2(n), k3(n), k4(n), tmp(n);

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());
  traj.states.push_back(y);
  if (after_step) after_step(times.front(), y);

  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double t = times[i];
    const double h = times[i + 1] - t;

    f(t, y, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    f(t + 0.5 * h, tmp, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    f(t + 0.5 * h, tmp, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + h * k3[j];
    f(t + h, tmp, k4);

    for (std::size_t j = 0; j < n; ++j)
      y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    if (!detail::finite(y)) {
      std::ostringstream msg;
      msg << "integration aborted: non-finite state at t = " << times[i + 1]
          << " (step " << i + 1 << ")";
      throw NumericalAbort(msg.str(), times[i + 1]);
    }
    traj.states.push_back(y);
    if (after_step) after_step(times[i + 1], y);
  }
  return traj;
}

// Composite trapezoid over an arbitrary strictly increasing grid.
// Exact for piecewise-affine integrands sampled on the same grid.
inline double trapezoid(const std::vector<double>& values,
                        const std::vector<double>& times) {
  detail::check_increasing(times);
  if (values.size() != times.size())
    throw std::invalid_argument("trapezoid: values/times size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    acc += 0.5 * (times[i + 1] - times[i]) * (values[i] + values[i + 1]);
  return acc;
}

inline Complex trapezoid(const std::vector<Complex>& values,
                         const std::vector<double>& times) {
  detail::check_increasing(times);
  if (values.size() != times.size())
    throw std::invalid_argument("trapezoid: values/times size mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    acc += 0.5 * (times[i + 1] - times[i]) * (values[i] + values[i + 1]);
  return acc;
}

// Cumulative trapezoid: out[i] = integral from times[0] to times[i].
inline std::vector<double> cumulative_trapezoid(
    const std::vector<double>& values, const std::vector<double>& times) {
  detail::check_increasing(times);
  if (values.size() != times.size())
    throw std::invalid_argument("cumulative_trapezoid: size mismatch");
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i)
    out[i] =
        out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  return out;
}

// Central-difference consistency check: compares (y[i+1]-y[i-1]) /
// (t[i+1]-t[i-1]) against f(t[i], y[i]) on interior points and returns the
// max-norm residual. O(h^2) for smooth solutions, so a trajectory produced
// by a correct integrator on step h should stay below ~10*h^2 * scale.
inline double finite_diff_check(const Trajectory& traj, const Rhs& f) {
  if (traj.times.size() < 3)
    throw std::invalid_argument("finite_diff_check needs >= 3 points");
  const std::size_t n = traj.states.front().size();
  State dydt(n);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.times.size(); ++i) {
    const double dt = traj.times[i + 1] - traj.times[i - 1];
    f(traj.times[i], traj.states[i], dydt);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex slope =
          (traj.states[i + 1][j] - traj.states[i - 1][j]) / dt;
      worst = std::max(worst, std::abs(slope - dydt[j]));
    }
  }
  return worst;
}

}  // namespace cohpol
