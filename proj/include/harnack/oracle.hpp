#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "harnack/core.hpp"
#include "harnack/shift.hpp"

namespace harnack {

enum class PolyIdentity { eq1, eq2, eq3, eq4 };

inline const char* poly_identity_name(PolyIdentity id) {
  switch (id) {
    case PolyIdentity::eq1: return "eq1";
    case PolyIdentity::eq2: return "eq2";
    case PolyIdentity::eq3: return "eq3";
    case PolyIdentity::eq4: return "eq4";
  }
  return "eq1";
}

/// Result of evaluating one polynomial identity at the (degree + 1)-st
/// roots of unity. A polynomial of degree d vanishing at d + 1 distinct
/// points vanishes identically, so sample_values doubles as a certificate
/// of the identity and max_residual as its distance from holding.
struct PolyIdentityCheck {
  PolyIdentity id = PolyIdentity::eq1;
  int max_degree = 0;
  std::vector<Complex> sample_values;
  double max_residual = 0.0;
  double scale = 1.0;
  bool pass = false;
};

namespace oracle_detail {

using M3 = Eigen::Matrix3cd;
using V3 = Eigen::Vector3cd;
using RV3 = Eigen::RowVector3cd;

// z(z - lambda) I + (z - lambda) R + R^2
inline M3 frame(Complex z, Complex lambda, const M3& R) {
  return z * (z - lambda) * M3::Identity() + (z - lambda) * R + R * R;
}

// (1 - conj(lambda) z) I + z (1 - conj(lambda) z) R* + z^2 R*^2
inline M3 frame_star(Complex z, Complex lambda, const M3& R) {
  const M3 Rs = R.adjoint();
  const Complex u = Complex(1.0) - std::conj(lambda) * z;
  return u * M3::Identity() + z * u * Rs + z * z * Rs * Rs;
}

inline V3 wvec(Complex z) { return V3(Complex(1.0), Complex(0.0), -z * z); }

}  // namespace oracle_detail

/*
 * The boundary kernel identity K_z^2(T) v(z) = 0 for the block form
 * (A, R, B) with R^3 = lambda R^2 unpacks, after clearing resolvents, into
 * four polynomial identities in z. With
 *
 *   F(z)  = z(z - lambda) I + (z - lambda) R + R^2
 *   F*(z) = (1 - conj(lambda) z) I + z (1 - conj(lambda) z) R* + z^2 R*^2
 *   w(z)  = (1, 0, -z^2)
 *
 * they read
 *
 *   eq1:  2 v0 z(z - lambda) + v1 A F w - v0 z^2 A F B                (deg 4)
 *   eq2:  v0 z(z - lambda) F* A* + v1 z(z - lambda) F* w
 *           + v1 (1 - conj(lambda) z) F w - v0 z^2 (1 - conj(lambda) z) F B
 *                                                                     (deg 6)
 *   eq3:  v0 B* F* A* + v1 B* F* w - 2 v0 z^2 (1 - conj(lambda) z)    (deg 4)
 *   eq4:  A F w - (-z^2, 0, 1) F B                                    (deg 4)
 *
 * each required to vanish identically in z.
 */
inline PolyIdentityCheck check_polynomial_identity(const BlockForm& bf,
                                                   const NullVectorParams& params,
                                                   Complex lambda, PolyIdentity id) {
  using namespace oracle_detail;
  if (std::abs(params.v0) == 0.0 && std::abs(params.v1) == 0.0)
    throw InputError("check_polynomial_identity: (v0, v1) must not both vanish");
  const M3& R = bf.R;
  const double rmax = bf.R.cwiseAbs().maxCoeff();
  const double cube_scale = std::pow(1.0 + rmax, 3.0) * (1.0 + std::abs(lambda));
  if (((R * R * R) - lambda * (R * R)).cwiseAbs().maxCoeff() > 1e-8 * cube_scale)
    throw PreconditionError(
        "check_polynomial_identity: R^3 = lambda R^2 does not hold for this block");

  PolyIdentityCheck out;
  out.id = id;
  out.max_degree = (id == PolyIdentity::eq2) ? 6 : 4;
  out.scale = 1.0 + std::max({bf.A.cwiseAbs().maxCoeff(), rmax, bf.B.cwiseAbs().maxCoeff()});

  const Complex v0 = params.v0;
  const Complex v1 = params.v1;
  const int pts = out.max_degree + 1;
  for (int k = 0; k < pts; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / pts);
    const M3 F = frame(z, lambda, R);
    const V3 w = wvec(z);
    Complex value;
    switch (id) {
      case PolyIdentity::eq1:
        value = 2.0 * v0 * z * (z - lambda) + v1 * (bf.A * F * w).value() -
                v0 * z * z * (bf.A * F * bf.B).value();
        break;
      case PolyIdentity::eq2: {
        const M3 Fs = frame_star(z, lambda, R);
        const Complex u = Complex(1.0) - std::conj(lambda) * z;
        const V3 t = v0 * z * (z - lambda) * (Fs * bf.A.adjoint()) +
                     v1 * z * (z - lambda) * (Fs * w) + v1 * u * (F * w) -
                     v0 * z * z * u * (F * bf.B);
        int arg = 0;
        t.cwiseAbs().maxCoeff(&arg);
        value = t(arg);
        break;
      }
      case PolyIdentity::eq3: {
        const M3 Fs = frame_star(z, lambda, R);
        value = v0 * (bf.B.adjoint() * Fs * bf.A.adjoint()).value() +
                v1 * (bf.B.adjoint() * Fs * w).value() -
                2.0 * v0 * z * z * (Complex(1.0) - std::conj(lambda) * z);
        break;
      }
      case PolyIdentity::eq4:
        value = (bf.A * F * w).value() -
                (RV3(-z * z, Complex(0.0), Complex(1.0)) * F * bf.B).value();
        break;
    }
    out.sample_values.push_back(value);
    out.max_residual = std::max(out.max_residual, std::abs(value));
  }
  out.pass = out.max_residual <= 1e-9 * out.scale;
  return out;
}

struct ScalarRelationReport {
  std::map<std::string, ConditionEntry> entries;
  bool all_pass = false;
};

/*
 * Scalar consequences of the four identities for a block in the part, with
 * a_j the entries of A, b_j the entries of B, r_jk those of R and
 * lambda = tr R:
 *
 *   a3 = b1,   Re a1 = Re b3,
 *   lambda (3 v1 + v0 (conj(a1) + conj(b3))) + v1 r22 = 0,
 *   v0 x^2 + v1 x - 2 v0 = 0 for x = a1 and x = b3,
 *   |r12|^2 = 2 - a1^2 / 2,   r23 = conj(r12).
 */
inline ScalarRelationReport check_scalar_relations(const BlockForm& bf,
                                                   const NullVectorParams& params = {}) {
  if (std::abs(params.v0) == 0.0 && std::abs(params.v1) == 0.0)
    throw InputError("check_scalar_relations: (v0, v1) must not both vanish");
  const Complex v0 = params.v0;
  const Complex v1 = params.v1;
  const Complex a1 = bf.A(0);
  const Complex b3 = bf.B(2);
  const Complex lambda = bf.R.trace();
  const double scale =
      1.0 + std::max({bf.A.cwiseAbs().maxCoeff(), bf.R.cwiseAbs().maxCoeff(),
                      bf.B.cwiseAbs().maxCoeff()});
  const double thr = 1e-9 * scale;

  ScalarRelationReport rep;
  const auto put = [&](const std::string& name, double residual) {
    rep.entries[name] = {residual <= thr, residual, std::nullopt};
  };
  put("a3_eq_b1", std::abs(bf.A(2) - bf.B(0)));
  put("re_a1_eq_re_b3", std::abs(a1.real() - b3.real()));
  put("trace_relation",
      std::abs(lambda * (3.0 * v1 + v0 * (std::conj(a1) + std::conj(b3))) +
               v1 * bf.R(1, 1)));
  put("quadratic_a1", std::abs(v0 * a1 * a1 + v1 * a1 - 2.0 * v0));
  put("quadratic_b3", std::abs(v0 * b3 * b3 + v1 * b3 - 2.0 * v0));
  put("superdiag_modulus",
      std::abs(Complex(std::norm(bf.R(0, 1)), 0.0) - (Complex(2.0) - 0.5 * a1 * a1)));
  put("conjugate_pair", std::abs(bf.R(1, 2) - std::conj(bf.R(0, 1))));

  rep.all_pass = true;
  for (const auto& [name, entry] : rep.entries) rep.all_pass = rep.all_pass && entry.pass;
  return rep;
}

/// Trace identities for R with spectrum {0, lambda1, lambda2}, sigma1 the
/// sum and sigma2 the product of the nonzero pair. The first identity
/// tr(R^2 - sigma1 R) = -2 sigma2 holds outright; the second compares
/// tr(R^2 - sigma1 R - sigma2 I) against -5 sigma2, and contradiction_gap
/// = |sigma2| measures how far a putative -3 sigma2 value would sit from
/// the true one. The gap vanishes exactly in the nilpotent case.
struct TraceCheckReport {
  Complex trace1;
  Complex trace2;
  double residual1 = 0.0;
  double residual2 = 0.0;
  double contradiction_gap = 0.0;
  bool pass = false;
};

inline TraceCheckReport trace_cross_check(const CMatrix& R, Complex sigma1,
                                          Complex sigma2) {
  require_square(R, "trace_cross_check");
  require_finite(R, "trace_cross_check");
  if (R.rows() != 3) throw DimensionError("trace_cross_check: expected a 3x3 matrix");

  const Complex disc = std::sqrt(sigma1 * sigma1 - 4.0 * sigma2);
  const Complex target[3] = {Complex(0.0), 0.5 * (sigma1 + disc), 0.5 * (sigma1 - disc)};
  Eigen::ComplexEigenSolver<CMatrix> es(R, false);
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
        "trace_cross_check: spectrum of R is not {0, lambda1, lambda2} for the "
        "given sigma1, sigma2");

  TraceCheckReport rep;
  const CMatrix R2 = R * R;
  rep.trace1 = (R2 - sigma1 * R).trace();
  rep.trace2 = (R2 - sigma1 * R - sigma2 * CMatrix::Identity(3, 3)).trace();
  const double tol = 1e-9 * (1.0 + max_abs(R)) * (1.0 + max_abs(R));
  rep.residual1 = std::abs(rep.trace1 + 2.0 * sigma2);
  rep.residual2 = std::abs(rep.trace2 + 5.0 * sigma2);
  rep.contradiction_gap = std::abs(sigma2);
  rep.pass = rep.residual1 <= tol && rep.residual2 <= tol;
  return rep;
}

/// Roots of v0 x^2 + v1 x - 2 v0 = 0, larger real part first. For the
/// default weights these are 2/sqrt(3) and -sqrt(3), the two admissible
/// corner values of a block in the part.
inline std::pair<Complex, Complex> quadratic_closure_roots(
    const NullVectorParams& params = {}) {
  if (std::abs(params.v0) == 0.0)
    throw InputError("quadratic_closure_roots: v0 must not vanish");
  const Complex v0 = params.v0;
  const Complex v1 = params.v1;
  const Complex sq = std::sqrt(v1 * v1 + 8.0 * v0 * v0);
  Complex r1 = (-v1 + sq) / (2.0 * v0);
  Complex r2 = (-v1 - sq) / (2.0 * v0);
  if (r1.real() < r2.real()) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace harnack
