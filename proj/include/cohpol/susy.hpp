#pragma once

// Truncated-Fock-space representation of the supersymmetric generators of
// the k-photon Jaynes-Cummings model and numerical verification of their
// algebra.
//
// Spin (x) field operators are stored as 2D x 2D matrices of D x D blocks,
// ordered so the upper-left block is the sigma_z = +1 sector:
//
//   Q  = [ 0        0 ]      Q+ = [ 0   a^k ]     N' = [ a^k (a+)^k   0   ]
//        [ (a+)^k   0 ],          [ 0    0  ],         [ 0   (a+)^k a^k   ]
//
//   N  = a+a + ((k-1)/2) sigma_z + 1/2  (diagonal blocks a+a + k/2 and
//                                        a a+ - k/2).
//
// Q and Q+ are built from matrix powers of the truncated ladder operators,
// so their columns vanish for Fock indices n > D-1-k. N' instead carries
// the exact operator matrix elements (m+k)!/m! and m!/(m-k)! on the
// diagonal for every index. The mismatch between the two constructions is
// confined to the boundary rows and is exactly what the full-space
// residuals of verify_algebra() measure; on basis states with
// n <= D-1-k (the "safe" subspace) all relations hold to roundoff.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohpol {

using Matrix = Eigen::MatrixXcd;

struct LadderOps {
  Matrix a;     // annihilation: <n-1| a |n> = sqrt(n)
  Matrix adag;  // creation, exact adjoint of a
};

inline LadderOps ladder_ops(int dim) {
  if (dim < 2) throw std::invalid_argument("ladder_ops: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return {a, a.adjoint()};
}

// (m+k)!/m! = (m+1)(m+2)...(m+k), computed by iterative multiplication.
// Guarded: factorial ratios beyond 170! territory are not representable.
inline double rising_moment(int m, int k) {
  if (m < 0 || k < 0) throw std::domain_error("rising_moment: m, k >= 0");
  if (m + k > 170)
    throw std::domain_error("rising_moment: m + k > 170 overflows double");
  double acc = 1.0;
  for (int j = 1; j <= k; ++j) acc *= double(m + j);
  return acc;
}

// m!/(m-k)! = m(m-1)...(m-k+1); zero when m < k (the lowering chain hits
// the vacuum).
inline double falling_moment(int m, int k) {
  if (m < 0 || k < 0) throw std::domain_error("falling_moment: m, k >= 0");
  if (m + k > 170)
    throw std::domain_error("falling_moment: m + k > 170 overflows double");
  if (m < k) return 0.0;
  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc *= double(m - j);
  return acc;
}

struct SusyGenerators {
  int dim = 0;  // Fock truncation D (per spin sector)
  int k = 1;    // photon multiplicity
  Matrix a, adag;               // D x D ladder operators
  Matrix q, q_dag;              // 2D x 2D supercharges
  Matrix n_op;                  // 2D x 2D generator N
  Matrix n_prime;               // 2D x 2D generator N'
  Matrix sigma_z;               // 2D x 2D diag(+I, -I)

  // Largest Fock index whose image under (a+)^k stays inside the
  // truncation; basis states up to here satisfy the algebra exactly.
  int safe_max_index() const { return dim - 1 - k; }
};

inline SusyGenerators build_generators(int dim, int k) {
  if (k < 0) throw std::invalid_argument("build_generators: k must be >= 0");
  if (dim < k + 2)
    throw std::invalid_argument(
        "build_generators: dim must be >= k + 2 so the truncation keeps at "
        "least one safe Fock index");
  if (dim - 1 + k > 170)
    throw std::domain_error(
        "build_generators: moments for dim - 1 + k > 170 overflow double");

  SusyGenerators gen;
  gen.dim = dim;
  gen.k = k;
  auto [a, adag] = ladder_ops(dim);
  gen.a = a;
  gen.adag = adag;

  Matrix adk = Matrix::Identity(dim, dim);  // (a+)^k as a matrix power
  for (int j = 0; j < k; ++j) adk = adag * adk;

  const int two_d = 2 * dim;
  gen.q = Matrix::Zero(two_d, two_d);
  gen.q.block(dim, 0, dim, dim) = adk;  // lower-left: (a+)^k sigma_-
  gen.q_dag = gen.q.adjoint();          // upper-right: a^k sigma_+

  gen.sigma_z = Matrix::Zero(two_d, two_d);
  gen.sigma_z.block(0, 0, dim, dim) = Matrix::Identity(dim, dim);
  gen.sigma_z.block(dim, dim, dim, dim) = -Matrix::Identity(dim, dim);

  const Matrix num = adag * a;  // exact diag(0..D-1)
  gen.n_op = Matrix::Zero(two_d, two_d);
  gen.n_op.block(0, 0, dim, dim) =
      num + (double(k) / 2.0) * Matrix::Identity(dim, dim);
  gen.n_op.block(dim, dim, dim, dim) =
      num + (1.0 - double(k) / 2.0) * Matrix::Identity(dim, dim);

  gen.n_prime = Matrix::Zero(two_d, two_d);
  for (int n = 0; n < dim; ++n) {
    gen.n_prime(n, n) = rising_moment(n, k);
    gen.n_prime(dim + n, dim + n) = falling_moment(n, k);
  }
  return gen;
}

struct RelationCheck {
  std::string name;
  double safe_residual = 0.0;  // max |LHS-RHS| over safe-subspace columns
  double full_residual = 0.0;  // max |LHS-RHS| over the whole matrix
  double scale = 1.0;          // max(1, |LHS|_max, |RHS|_max) for relative use
};

struct AlgebraReport {
  int dim = 0;
  int k = 0;
  std::vector<RelationCheck> relations;

  double max_safe_relative() const {
    double r = 0.0;
    for (const auto& c : relations)
      r = std::max(r, c.safe_residual / c.scale);
    return r;
  }
};

namespace detail {

inline RelationCheck check_relation(const std::string& name, const Matrix& lhs,
                                    const Matrix& rhs, int dim, int k) {
  RelationCheck out;
  out.name = name;
  const Matrix diff = lhs - rhs;
  out.full_residual = diff.cwiseAbs().maxCoeff();
  out.scale = std::max(
      1.0, std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()));
  double safe = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int n = 0; n <= dim - 1 - k; ++n)
      safe = std::max(safe, diff.col(s * dim + n).cwiseAbs().maxCoeff());
  out.safe_residual = safe;
  return out;
}

}  // namespace detail

// Evaluate all eleven algebra relations on the truncated representation.
// Residuals are reported twice: restricted to columns of safe basis states
// (should vanish to roundoff) and over the full matrix (nonzero for k >= 1
// in the relations that compare products of truncated supercharges against
// the exact N', e.g. {Q+, Q} = N').
inline AlgebraReport verify_algebra(const SusyGenerators& g) {
  const int d = g.dim, k = g.k;
  const Matrix& Q = g.q;
  const Matrix& Qd = g.q_dag;
  const Matrix& N = g.n_op;
  const Matrix& Np = g.n_prime;
  const Matrix& Sz = g.sigma_z;
  const Matrix Zero = Matrix::Zero(2 * d, 2 * d);

  AlgebraReport rep;
  rep.dim = d;
  rep.k = k;
  auto add = [&](const std::string& name, const Matrix& lhs,
                 const Matrix& rhs) {
    rep.relations.push_back(detail::check_relation(name, lhs, rhs, d, k));
  };

  add("Q^2 = 0", Q * Q, Zero);
  add("(Q+)^2 = 0", Qd * Qd, Zero);
  add("[Q+, Q] = N' sz", Qd * Q - Q * Qd, Np * Sz);
  add("[N, N'] = 0", N * Np - Np * N, Zero);
  add("[N, Q] = Q", N * Q - Q * N, Q);
  add("[N, Q+] = -Q+", N * Qd - Qd * N, -Qd);
  add("{Q+, Q} = N'", Qd * Q + Q * Qd, Np);
  add("{Q, sz} = 0", Q * Sz + Sz * Q, Zero);
  add("{Q+, sz} = 0", Qd * Sz + Sz * Qd, Zero);
  add("[Q, sz] = 2Q", Q * Sz - Sz * Q, 2.0 * Q);
  add("[Q+, sz] = -2Q+", Qd * Sz - Sz * Qd, -2.0 * Qd);
  return rep;
}

// Trace out the field factor of a 2D x 2D spin (x) field matrix, leaving a
// 2 x 2 matrix indexed by spin *block* (0 = sigma_z +1 sector).
inline Eigen::Matrix2cd partial_trace_field(const Matrix& m, int dim) {
  if (m.rows() != 2 * dim || m.cols() != 2 * dim)
    throw std::invalid_argument("partial_trace_field: size mismatch");
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int n = 0; n < dim; ++n)
        out(s1, s2) += m(s1 * dim + n, s2 * dim + n);
  return out;
}

}  // namespace cohpol
