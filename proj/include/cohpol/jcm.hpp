#pragma once

// Second-order reduced dynamics of the atomic polarization in the k-photon
// Jaynes-Cummings model with the field prepared in a number state |m>.
//
// In the interaction picture the coupling is
//
//   H_I(t) = g e^{-i delta t} Q + g* e^{+i delta t} Q+,   delta = k w - w0,
//
// with the supercharges Q = (a+)^k sigma_-, Q+ = a^k sigma_+ (susy.hpp).
// The time-local model integrated here couples the off-diagonal pair as
//
//   d rho01/dt = c1(t) rho01 - c2(t) rho10,
//   d rho10/dt = c1*(t) rho10 - c2(t) rho01,
//
//   c1(t) = -|g|^2 [ (m+k)!/m! + m!/(m-k)! ] (1 - e^{-i delta t})/(i delta),
//   c2(t) = -|g|^2 [ (m+k)!/m! ] 2 sin(delta t)/delta   (real),
//
// or, in the real combinations u = rho01 + rho10, v = i(rho01 - rho10),
//
//   du/dt = [Re c1 - c2] u + Im c1 v,
//   dv/dt = [Re c1 + c2] v - Im c1 u,
//
// with zero-detuning closed forms u = u0 exp(lambda_u t^2/2),
// v = v0 exp(lambda_v t^2/2).
//
// oracle_integrand() is an independent first-principles check: it builds
// H_I(t) as dense matrices, forms the double commutator
// [H_I(t), [H_I(t'), rho (x) |m><m|]] and partial-traces the field factor.
// Note that for k >= 1 the exact integrand obtained this way couples rho01
// only to itself (every cross term carries a field moment <a^{2k}> or
// <(a+)^{2k}> that vanishes on a number state, and the surviving
// sigma_-/sigma_+ sandwiches are diagonal): the c2 cross-coupling of the
// time-local model above is a modelling convention, not a consequence of
// the number-state reservoir. integrand_element_analytic() gives the exact
// closed form of the integrand element; the test suite pins the difference.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohpol/numerics.hpp"
#include "cohpol/susy.hpp"

namespace cohpol {

struct JcmParams {
  Complex g{1.0, 0.0};  // coupling strength
  int k = 1;            // photon multiplicity, >= 0
  int m = 0;            // field number state, >= 0
  double omega0 = 1.0;  // atomic transition frequency
  double omega = 1.0;   // field mode frequency
  double delta = 0.0;   // detuning, must equal k*omega - omega0 exactly

  void validate() const {
    if (k < 0) throw std::domain_error("jcm.k must be >= 0");
    if (m < 0) throw std::domain_error("jcm.m must be >= 0");
    if (delta != double(k) * omega - omega0)
      throw std::domain_error("jcm.delta must equal k*omega - omega0");
    if (m + k > 170)
      throw std::domain_error("jcm: m + k > 170 overflows the moments");
  }
};

inline JcmParams make_jcm_params(Complex g, int k, int m, double omega0,
                                 double omega) {
  JcmParams p;
  p.g = g;
  p.k = k;
  p.m = m;
  p.omega0 = omega0;
  p.omega = omega;
  p.delta = double(k) * omega - omega0;
  p.validate();
  return p;
}

struct CoefficientPair {
  Complex c1{0.0, 0.0};
  double c2 = 0.0;  // the two bracket terms are conjugates, so c2 is real
};

namespace detail {

// phi(delta, t) = (1 - e^{-i delta t}) / (i delta)
//              = sin(delta t)/delta - i (1 - cos(delta t))/delta.
// For |delta t| below the switch threshold the direct form loses all
// significant digits to cancellation; the series
//   phi = t - i delta t^2/2 - delta^2 t^3/6 + i delta^3 t^4/24 + ...
// is used instead (truncation error O((delta t)^4) relative).
constexpr double kPhaseSeriesThreshold = 1e-6;

inline Complex phase_integral(double delta, double t) {
  const double x = delta * t;
  if (std::abs(x) < kPhaseSeriesThreshold) {
    return {t - delta * delta * t * t * t / 6.0,
            -delta * t * t / 2.0 + delta * delta * delta * t * t * t * t / 24.0};
  }
  const Complex i_unit{0.0, 1.0};
  return (1.0 - std::exp(-i_unit * x)) / (i_unit * delta);
}

// sin(delta t)/delta with the matching small-argument series.
inline double sinc_integral(double delta, double t) {
  const double x = delta * t;
  if (std::abs(x) < kPhaseSeriesThreshold)
    return t - delta * delta * t * t * t / 6.0;
  return std::sin(x) / delta;
}

}  // namespace detail

inline CoefficientPair coefficients(const JcmParams& p, double t) {
  p.validate();
  const double g2 = std::norm(p.g);
  const double rising = rising_moment(p.m, p.k);
  const double falling = falling_moment(p.m, p.k);
  CoefficientPair out;
  out.c1 = -g2 * (rising + falling) * detail::phase_integral(p.delta, t);
  out.c2 = -2.0 * g2 * rising * detail::sinc_integral(p.delta, t);
  return out;
}

// Zero-detuning growth/decay exponents of the u, v closed forms.
// lambda_u = -|g|^2 [ m!/(m-k)! - (m+k)!/m! ] >= 0 (zero only at k = 0),
// lambda_v = -|g|^2 [ m!/(m-k)! + 3 (m+k)!/m! ] < 0 for |g| > 0.
struct Exponents {
  double lambda_u = 0.0;
  double lambda_v = 0.0;
};

inline Exponents lambda_exponents(const JcmParams& p) {
  p.validate();
  const double g2 = std::norm(p.g);
  const double rising = rising_moment(p.m, p.k);
  const double falling = falling_moment(p.m, p.k);
  return {-g2 * (falling - rising), -g2 * (falling + 3.0 * rising)};
}

struct UvTrajectory {
  std::vector<double> times;
  std::vector<double> u;
  std::vector<double> v;
};

// u(t) = u0 exp(lambda_u t^2 / 2), v(t) = v0 exp(lambda_v t^2 / 2).
// Only defined on resonance; delta != 0 is an error.
inline UvTrajectory closed_form_zero_detuning(const JcmParams& p, double u0,
                                              double v0,
                                              const std::vector<double>& grid) {
  p.validate();
  if (p.delta != 0.0)
    throw std::domain_error(
        "closed_form_zero_detuning requires delta == 0");
  detail::check_increasing(grid);
  const Exponents lam = lambda_exponents(p);
  UvTrajectory out;
  out.times = grid;
  out.u.reserve(grid.size());
  out.v.reserve(grid.size());
  for (double t : grid) {
    out.u.push_back(u0 * std::exp(lam.lambda_u * t * t / 2.0));
    out.v.push_back(v0 * std::exp(lam.lambda_v * t * t / 2.0));
  }
  return out;
}

// Whether the full complex c1 drives the evolution or only its real part
// (the imaginary part is a frequency pull; dropping it isolates the decay).
enum class CoefficientMode { kFullC1, kRealC1Only };

// |u| beyond this aborts an evolution: the quadratic-exponent growth of u
// is unbounded and past ~1e12 the trajectory has left any physically
// meaningful regime while still being representable.
constexpr double kGrowthGuard = 1e12;

struct PolarizationTrajectory {
  std::vector<double> times;
  std::vector<Complex> rho01;
  std::vector<Complex> rho10;
};

inline PolarizationTrajectory evolve_offdiag(
    const JcmParams& p, Complex rho01_0, Complex rho10_0,
    const std::vector<double>& grid,
    CoefficientMode mode = CoefficientMode::kFullC1) {
  p.validate();
  detail::check_increasing(grid);

  const Rhs rhs = [&](double t, const State& y, State& dydt) {
    const CoefficientPair c = coefficients(p, t);
    const Complex c1 =
        mode == CoefficientMode::kFullC1 ? c.c1 : Complex{c.c1.real(), 0.0};
    dydt[0] = c1 * y[0] - c.c2 * y[1];
    dydt[1] = std::conj(c1) * y[1] - c.c2 * y[0];
  };
  const auto guard = [](double t, const State& y) {
    if (std::abs(y[0] + y[1]) > kGrowthGuard) {
      std::ostringstream msg;
      msg << "polarization growth guard: |u| exceeded " << kGrowthGuard
          << " at t = " << t;
      throw NumericalAbort(msg.str(), t);
    }
  };
  const Trajectory traj = rk4_integrate(rhs, {rho01_0, rho10_0}, grid, guard);

  PolarizationTrajectory out;
  out.times = traj.times;
  out.rho01.reserve(traj.states.size());
  out.rho10.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    out.rho01.push_back(s[0]);
    out.rho10.push_back(s[1]);
  }
  return out;
}

inline UvTrajectory evolve_uv(const JcmParams& p, double u0, double v0,
                              const std::vector<double>& grid,
                              CoefficientMode mode = CoefficientMode::kFullC1) {
  p.validate();
  detail::check_increasing(grid);

  const Rhs rhs = [&](double t, const State& y, State& dydt) {
    const CoefficientPair c = coefficients(p, t);
    const double re_c1 = c.c1.real();
    const double im_c1 =
        mode == CoefficientMode::kFullC1 ? c.c1.imag() : 0.0;
    dydt[0] = (re_c1 - c.c2) * y[0] + im_c1 * y[1];
    dydt[1] = (re_c1 + c.c2) * y[1] - im_c1 * y[0];
  };
  const auto guard = [](double t, const State& y) {
    if (std::abs(y[0]) > kGrowthGuard) {
      std::ostringstream msg;
      msg << "polarization growth guard: |u| exceeded " << kGrowthGuard
          << " at t = " << t;
      throw NumericalAbort(msg.str(), t);
    }
  };
  const Trajectory traj =
      rk4_integrate(rhs, {Complex{u0, 0.0}, Complex{v0, 0.0}}, grid, guard);

  UvTrajectory out;
  out.times = traj.times;
  out.u.reserve(traj.states.size());
  out.v.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    out.u.push_back(s[0].real());
    out.v.push_back(s[1].real());
  }
  return out;
}

// ---------------------------------------------------------------------------
// First-principles oracle.
//
// Atomic 2x2 matrices at this interface are indexed by the *labels* |0>
// (ground, sigma_z = -1) and |1> (excited, sigma_z = +1); rho01 = <0|rho|1>.
// The internal block layout of susy.hpp puts the sigma_z = +1 sector first,
// so label L lives in block 1 - L.

using AtomicMatrix = Eigen::Matrix2cd;

// H_I(t) as a dense 2*dim x 2*dim matrix.
inline Matrix interaction_hamiltonian(const JcmParams& p,
                                      const SusyGenerators& gen, double t) {
  const Complex i_unit{0.0, 1.0};
  return p.g * std::exp(-i_unit * p.delta * t) * gen.q +
         std::conj(p.g) * std::exp(i_unit * p.delta * t) * gen.q_dag;
}

// Tr_field [H_I(t), [H_I(t'), rho_q (x) |m><m|]], evaluated by brute force.
// dim must satisfy dim >= m + k + 2 so every operator application stays in
// the safe subspace and truncation cannot contaminate the result. The
// generator overload lets quadrature loops reuse the matrices.
inline AtomicMatrix oracle_integrand(const JcmParams& p,
                                     const SusyGenerators& gen,
                                     const AtomicMatrix& rho_q, double t,
                                     double t_prime) {
  p.validate();
  const int dim = gen.dim;
  if (dim < p.m + p.k + 2)
    throw std::invalid_argument(
        "oracle_integrand: dim must be >= m + k + 2");
  if (gen.k != p.k)
    throw std::invalid_argument(
        "oracle_integrand: generator multiplicity does not match params");

  const Matrix h_t = interaction_hamiltonian(p, gen, t);
  const Matrix h_tp = interaction_hamiltonian(p, gen, t_prime);

  // rho_q (x) |m><m| in block layout (label L -> block 1 - L).
  Matrix rho_full = Matrix::Zero(2 * dim, 2 * dim);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      rho_full(s1 * dim + p.m, s2 * dim + p.m) = rho_q(1 - s1, 1 - s2);

  const Matrix inner = h_tp * rho_full - rho_full * h_tp;
  const Matrix outer = h_t * inner - inner * h_t;

  const Eigen::Matrix2cd by_block = partial_trace_field(outer, dim);
  AtomicMatrix out;
  for (int l1 = 0; l1 < 2; ++l1)
    for (int l2 = 0; l2 < 2; ++l2) out(l1, l2) = by_block(1 - l1, 1 - l2);
  return out;
}

inline AtomicMatrix oracle_integrand(const JcmParams& p,
                                     const AtomicMatrix& rho_q, double t,
                                     double t_prime, int dim) {
  return oracle_integrand(p, build_generators(dim, p.k), rho_q, t, t_prime);
}

// Exact closed form of the (0,1) element of oracle_integrand, obtained by
// reducing the trace terms with the number-state moments
// <a^k (a+)^k> = (m+k)!/m! and <(a+)^k a^k> = m!/(m-k)!:
//
//   |g|^2 e^{i delta (t'-t)} [ (m+k)!/m! + m!/(m-k)! ] rho01
//     - 2 g^2 e^{-i delta (t+t')} rho10   (k = 0 only).
//
// The rho10 term survives only at k = 0, where <a^{2k}> = 1; for k >= 1
// all cross couplings vanish on a number state. Integrating the rho01
// part over t' in [0, t] and negating reproduces c1(t) exactly.
inline Complex integrand_element_analytic(const JcmParams& p, Complex rho01,
                                          Complex rho10, double t,
                                          double t_prime) {
  p.validate();
  const Complex i_unit{0.0, 1.0};
  const double rising = rising_moment(p.m, p.k);
  const double falling = falling_moment(p.m, p.k);
  Complex el = std::norm(p.g) * std::exp(i_unit * p.delta * (t_prime - t)) *
               (rising + falling) * rho01;
  if (p.k == 0)
    el -= 2.0 * p.g * p.g *
          std::exp(-i_unit * p.delta * (t + t_prime)) * rho10;
  return el;
}

}  // namespace cohpol
