#pragma once

// Thermal bosonic reservoir coupled to a two-level system: mode list,
// Bose occupation, and the four interaction-kernel time integrals
//
//   a1 = sum_k g_k^2 (n_k + 1) (1 - e^{-i w_k t}) / (i w_k)
//   a2 = sum_k g_k^2  n_k      (1 - e^{+i w_k t}) / (-i w_k)
//   a3 = sum_k g_k^2 (n_k + 1) (1 - e^{+i w_k t}) / (-i w_k)
//   a4 = sum_k g_k^2  n_k      (1 - e^{-i w_k t}) / (i w_k)
//
// whose sum is real, a1+a2+a3+a4 = sum_k 2 g_k^2 (2 n_k + 1) sin(w_k t)/w_k,
// the reservoir contribution to the off-diagonal decay rate.
// Units: hbar = kB = 1 throughout.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cohpol/numerics.hpp"

namespace cohpol {

struct ReservoirMode {
  double omega = 1.0;  // mode frequency, > 0
  double g = 0.0;      // real coupling strength

  void validate() const {
    if (!(omega > 0.0))
      throw std::domain_error("reservoir mode frequency must be > 0");
    if (!std::isfinite(g))
      throw std::domain_error("reservoir mode coupling must be finite");
  }
};

struct ReservoirSpec {
  std::vector<ReservoirMode> modes;
  double temperature = 0.0;  // T >= 0; T = 0 is the vacuum

  void validate() const {
    if (!(temperature >= 0.0))
      throw std::domain_error("reservoir temperature must be >= 0");
    for (const auto& m : modes) m.validate();
  }
};

// Mean thermal occupation 1/(e^{omega/T} - 1). Returns exactly 0 at T = 0.
// expm1 keeps the high-temperature (omega/T << 1) regime accurate.
inline double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0))
    throw std::domain_error("bose_occupation: omega must be > 0");
  if (!(temperature >= 0.0))
    throw std::domain_error("bose_occupation: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

struct KernelTerms {
  Complex a1{0.0, 0.0};
  Complex a2{0.0, 0.0};
  Complex a3{0.0, 0.0};
  Complex a4{0.0, 0.0};
  Complex total{0.0, 0.0};  // a1 + a2 + a3 + a4, summed in that order
};

// The four kernel sums at time t. Pairwise conjugate structure
// (a3 = conj(a1), a4 = conj(a2) mode by mode) makes the total real up to
// roundoff; at t = 0 every term is exactly zero.
inline KernelTerms kernel_terms(const ReservoirSpec& spec, double t) {
  spec.validate();
  KernelTerms out;
  const Complex i_unit{0.0, 1.0};
  for (const auto& m : spec.modes) {
    const double nbar = bose_occupation(m.omega, spec.temperature);
    const double g2 = m.g * m.g;
    const Complex iw = i_unit * m.omega;
    const Complex em = 1.0 - std::exp(-iw * t);  // 1 - e^{-i w t}
    const Complex ep = 1.0 - std::exp(iw * t);   // 1 - e^{+i w t}
    out.a1 += g2 * (nbar + 1.0) * em / iw;
    out.a2 += g2 * nbar * ep / (-iw);
    out.a3 += g2 * (nbar + 1.0) * ep / (-iw);
    out.a4 += g2 * nbar * em / iw;
  }
  out.total = out.a1 + out.a2 + out.a3 + out.a4;
  return out;
}

// Real closed form of the kernel total:
//   sum_k 2 g_k^2 (2 n_k + 1) sin(w_k t) / w_k.
// Equals Re(kernel_terms(spec, t).total); odd in t.
inline double reservoir_rate(const ReservoirSpec& spec, double t) {
  spec.validate();
  double acc = 0.0;
  for (const auto& m : spec.modes) {
    const double nbar = bose_occupation(m.omega, spec.temperature);
    acc += 2.0 * m.g * m.g * (2.0 * nbar + 1.0) * std::sin(m.omega * t) /
           m.omega;
  }
  return acc;
}

}  // namespace cohpol
