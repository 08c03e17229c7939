#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "harnack/core.hpp"
#include "harnack/grid.hpp"
#include "harnack/hermitian.hpp"
#include "harnack/shift.hpp"

namespace harnack {

/*
 * Operator kernel attached to a point z of the closed unit disk:
 *
 *   K_z^rho(T) = (I - conj(z) T)^{-1} + (I - z T^*)^{-1} + (rho - 2) I.
 *
 * T belongs to the class with parameter rho exactly when its spectrum sits
 * in the closed disk and K_z^rho(T) is positive semidefinite for every z in
 * the open disk; boundary evaluation is legitimate for nilpotent T, where
 * the resolvents collapse to finite Neumann sums and are exact.
 */
struct KernelEvaluation {
  Complex z;
  double rho;
  HermitianForm K;
  double min_eigenvalue;
  double symmetrization_defect;
};

namespace detail {

inline double inf_norm(const CMatrix& X) {
  return X.cwiseAbs().rowwise().sum().maxCoeff();
}

// (I - zbar X)^{-1}, exact Neumann sum for nilpotent X, pivoted LU otherwise.
inline CMatrix resolvent_at(const CMatrix& X, Complex zbar) {
  const Eigen::Index n = X.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  if (is_nilpotent(X)) {
    CMatrix acc = I;
    CMatrix pw = I;
    for (Eigen::Index k = 1; k < n; ++k) {
      pw = zbar * (pw * X).eval();
      acc += pw;
    }
    return acc;
  }
  const CMatrix M = I - zbar * X;
  Eigen::FullPivLU<CMatrix> lu(M);
  if (!lu.isInvertible())
    throw SingularityError("rho_kernel: I - conj(z) T is singular at this sample",
                           std::numeric_limits<double>::infinity());
  CMatrix inv = lu.inverse();
  const double cond = inf_norm(M) * inf_norm(inv);
  if (cond > 1e14)
    throw SingularityError("rho_kernel: resolvent system is numerically singular", cond);
  return inv;
}

}  // namespace detail

inline KernelEvaluation rho_kernel(const CMatrix& T, Complex z, double rho) {
  require_square(T, "rho_kernel");
  require_finite(T, "rho_kernel");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw InputError("rho_kernel: rho must be positive and finite");
  if (!(std::abs(z) <= 1.0 + 1e-12))
    throw InputError("rho_kernel: z must lie in the closed unit disk");
  const Eigen::Index n = T.rows();
  const CMatrix R1 = detail::resolvent_at(T, std::conj(z));
  const CMatrix R2 = detail::resolvent_at(T.adjoint().eval(), z);
  const CMatrix raw =
      R1 + R2 + Complex(rho - 2.0, 0.0) * CMatrix::Identity(n, n);
  const double defect = max_abs(raw - raw.adjoint());
  if (defect > 1e-10 * (1.0 + max_abs(raw)))
    throw SingularityError("rho_kernel: resolvent pair lost Hermitian symmetry", defect);
  HermitianForm K(0.5 * (raw + raw.adjoint()));
  const double min_eig = K.min_eigenvalue();
  return {z, rho, std::move(K), min_eig, defect};
}

/// Orthonormal basis of the numerical null space of the evaluated kernel:
/// eigenvectors whose eigenvalue modulus is at most
/// rank_tol * (1 + largest eigenvalue modulus).
inline std::vector<CVector> kernel_null_space(const KernelEvaluation& eval,
                                              double rank_tol = 1e-8) {
  if (!(rank_tol > 0.0)) throw InputError("kernel_null_space: rank_tol must be positive");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(eval.K.matrix());
  const double thr = rank_tol * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<CVector> basis;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= thr) basis.push_back(es.eigenvectors().col(i));
  return basis;
}

/// v(z) = (v0, v1 z, 0, -v1 z^3, -v0 z^4).
inline CVector boundary_null_vector(const NullVectorParams& params, Complex z) {
  if (std::abs(params.v0) == 0.0 && std::abs(params.v1) == 0.0)
    throw InputError("boundary_null_vector: (v0, v1) must not both vanish");
  CVector v(5);
  v << params.v0, params.v1 * z, Complex(0.0, 0.0), -params.v1 * ipow(z, 3),
      -params.v0 * ipow(z, 4);
  return v;
}

/// Checks K_z^2(T) v(z) = 0 on the unit circle. residual is the worst
/// relative value of ||K v(z)|| over the sampled angles; the entry passes
/// at the fixed threshold 1e-8.
inline ConditionEntry verify_ker_condition(const CMatrix& T,
                                           const NullVectorParams& params = {},
                                           int boundary_angles = 128) {
  require_square(T, "verify_ker_condition");
  require_finite(T, "verify_ker_condition");
  if (T.rows() != 5) throw DimensionError("verify_ker_condition: expected a 5x5 matrix");
  if (boundary_angles < 1)
    throw InputError("verify_ker_condition: boundary_angles must be at least 1");
  if (std::abs(params.v0) == 0.0 && std::abs(params.v1) == 0.0)
    throw InputError("verify_ker_condition: (v0, v1) must not both vanish");
  if (!is_nilpotent(T) && !(spectral_radius_of(T) < 1.0))
    throw PreconditionError(
        "verify_ker_condition: boundary evaluation needs a nilpotent matrix or "
        "spectral radius below one");
  double residual = 0.0;
  for (int k = 0; k < boundary_angles; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / boundary_angles);
    const CVector v = boundary_null_vector(params, z);
    const KernelEvaluation eval = rho_kernel(T, z, 2.0);
    residual = std::max(residual, (eval.K.matrix() * v).norm() / v.norm());
  }
  return {residual <= 1e-8, residual, std::nullopt};
}

/// Coefficients (A_n, B_n) with X^n = A_n X^2 + B_n X for a 3x3 matrix X
/// whose minimal polynomial divides t (t - lambda1)(t - lambda2). The
/// divided-difference form is used for separated eigenvalues, the confluent
/// limit below gap 1e-10, and both branches are cross-checked inside the
/// band [1e-10, 1e-6].
inline std::pair<Complex, Complex> resolvent_power_coeffs(Complex lambda1,
                                                          Complex lambda2, int n) {
  if (n < 1) throw InputError("resolvent_power_coeffs: n must be positive");
  if (n == 1) return {Complex(0.0), Complex(1.0)};
  if (n == 2) return {Complex(1.0), Complex(0.0)};
  const auto confluent = [n](Complex l) -> std::pair<Complex, Complex> {
    return {static_cast<double>(n - 1) * ipow(l, n - 2),
            -static_cast<double>(n - 2) * ipow(l, n - 1)};
  };
  const Complex gap = lambda1 - lambda2;
  if (std::abs(gap) <= 1e-10) return confluent(0.5 * (lambda1 + lambda2));
  const Complex A = (ipow(lambda1, n - 1) - ipow(lambda2, n - 1)) / gap;
  const Complex B =
      -lambda1 * lambda2 * (ipow(lambda1, n - 2) - ipow(lambda2, n - 2)) / gap;
  if (std::abs(gap) <= 1e-6) {
    const auto [Ac, Bc] = confluent(0.5 * (lambda1 + lambda2));
    const double lim = 1e-3 * n * n *
                       std::pow(1.0 + std::max(std::abs(lambda1), std::abs(lambda2)),
                                static_cast<double>(n));
    if (std::abs(A - Ac) > lim || std::abs(B - Bc) > lim)
      throw PreconditionError(
          "resolvent_power_coeffs: branch cross-check failed near confluence");
  }
  return {A, B};
}

/// Coefficients (c1, c2) of (I - conj(z) R)^{-1} = I + c1 R + c2 R^2 for R
/// as in resolvent_power_coeffs. Branch-free rational functions of the
/// eigenvalues; poles are rejected.
inline std::pair<Complex, Complex> resolvent_expansion_coeffs(Complex lambda1,
                                                              Complex lambda2,
                                                              Complex z) {
  const Complex zb = std::conj(z);
  const Complex den = (Complex(1.0) - zb * lambda1) * (Complex(1.0) - zb * lambda2);
  if (std::abs(den) < 1e-14)
    throw SingularityError(
        "resolvent_expansion_coeffs: z is conjugate-reciprocal to an eigenvalue",
        1.0 / std::max(std::abs(den), 1e-300));
  return {(zb - zb * zb * (lambda1 + lambda2)) / den, zb * zb / den};
}

/// Evaluates (I - conj(z) R)^{-1} through the quadratic expansion after
/// checking that the spectrum of R is {0, lambda1, lambda2}.
inline CMatrix resolvent_via_expansion(const CMatrix& R, Complex lambda1,
                                       Complex lambda2, Complex z) {
  require_square(R, "resolvent_via_expansion");
  require_finite(R, "resolvent_via_expansion");
  if (R.rows() != 3) throw DimensionError("resolvent_via_expansion: expected a 3x3 matrix");
  if (!(std::abs(z) <= 1.0 + 1e-12))
    throw InputError("resolvent_via_expansion: z must lie in the closed unit disk");
  Eigen::ComplexEigenSolver<CMatrix> es(R, false);
  const Complex target[3] = {Complex(0.0), lambda1, lambda2};
  int perm[3] = {0, 1, 2};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(es.eigenvalues()(i) - target[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm, perm + 3));
  if (best > 1e-8 * (1.0 + max_abs(R)))
    throw PreconditionError(
        "resolvent_via_expansion: spectrum of R does not match {0, lambda1, lambda2}");
  const auto [c1, c2] = resolvent_expansion_coeffs(lambda1, lambda2, z);
  return CMatrix::Identity(3, 3) + c1 * R + c2 * (R * R);
}

}  // namespace harnack
