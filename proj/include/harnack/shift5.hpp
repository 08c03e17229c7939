#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "harnack/core.hpp"
#include "harnack/grid.hpp"
#include "harnack/kernels.hpp"
#include "harnack/shift.hpp"

namespace harnack {

enum class Family { family1, family2, shift_itself, none };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::family1: return "family1";
    case Family::family2: return "family2";
    case Family::shift_itself: return "shift_itself";
    case Family::none: return "none";
  }
  return "none";
}

/// Classification outcome; theta is present exactly for the two
/// one-parameter families.
struct FamilyTag {
  Family family = Family::none;
  std::optional<double> theta;
};

/// First family through the normalized five-dimensional shift:
/// superdiagonal (a, a e^{i theta}, a e^{-i theta}, a) with a = 2/sqrt(3).
/// theta = 0 is the shift itself.
inline CMatrix family1(double theta) {
  const double a = 2.0 / std::sqrt(3.0);
  CMatrix T = CMatrix::Zero(5, 5);
  T(0, 1) = a;
  T(1, 2) = std::polar(a, theta);
  T(2, 3) = std::polar(a, -theta);
  T(3, 4) = a;
  return T;
}

/// Second family: superdiagonal (-sqrt(3), e^{i theta}/sqrt(2),
/// e^{-i theta}/sqrt(2), -sqrt(3)). Operator norm sqrt(3), numerical
/// radius one.
inline CMatrix family2(double theta) {
  const double s = std::sqrt(3.0);
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix T = CMatrix::Zero(5, 5);
  T(0, 1) = -s;
  T(1, 2) = std::polar(r, theta);
  T(2, 3) = std::polar(r, -theta);
  T(3, 4) = -s;
  return T;
}

/// Named conditions with an overall verdict. Iteration over entries is
/// alphabetical by name, which keeps serialized reports deterministic.
struct ConditionReport {
  std::map<std::string, ConditionEntry> entries;
  bool verdict = false;
};

namespace detail {

// det of the matrix whose columns are X e1, Y e2, Z e3.
inline Complex colsub_det(const Eigen::Matrix3cd& X, const Eigen::Matrix3cd& Y,
                          const Eigen::Matrix3cd& Z) {
  Eigen::Matrix3cd D;
  D.col(0) = X.col(0);
  D.col(1) = Y.col(1);
  D.col(2) = Z.col(2);
  return D.determinant();
}

}  // namespace detail

/*
 * Determinant conditions on the block form (A, R, B) of a candidate member
 * of the part of the normalized five-dimensional shift, with
 *
 *   M = I - (A* A + B B*) / 4.
 *
 * p1 through p4 are the vanishing coefficient conditions of the boundary
 * determinant polynomial, p5 is the strict trace bound
 * 3 - (||A||^2 + ||B||^2)/4 - |tr R| > 0, and p2S5 asks for
 * M - Re(conj(z) R) to stay positive semidefinite on the circle. The
 * structural entries record the block pattern, the strict contractivity of
 * the spectrum of R, the boundary kernel identity and nilpotency of the
 * assembled operator.
 */
inline ConditionReport check_corollary_conditions(const CMatrix& T,
                                                  const NullVectorParams& params = {},
                                                  const GridSpec& grid = default_harnack_grid(),
                                                  double tol = 1e-8) {
  require_square(T, "check_corollary_conditions");
  require_finite(T, "check_corollary_conditions");
  if (T.rows() != 5)
    throw DimensionError("check_corollary_conditions: expected a 5x5 matrix");
  if (!(tol > 0.0)) throw InputError("check_corollary_conditions: tol must be positive");
  validate_grid(grid);

  ConditionReport rep;
  const BlockForm bf = block_decompose(T, tol);
  rep.entries["blockform"] = {bf.pattern_residual <= tol, bf.pattern_residual, std::nullopt};

  const double spec_R = spectral_radius_of(bf.R);
  rep.entries["spectrum_R"] = {spec_R < 1.0, std::max(0.0, spec_R - 1.0), std::nullopt};

  const int bnd = std::max(grid.boundary_angles, 1);
  rep.entries["ker"] = verify_ker_condition(T, params, bnd);

  const Eigen::Matrix3cd Rs = bf.R.adjoint();
  const Eigen::Matrix3cd M = Eigen::Matrix3cd::Identity() -
                             0.25 * (bf.A.adjoint() * bf.A + bf.B * bf.B.adjoint());

  const double p1 = std::abs(bf.R.determinant());
  rep.entries["p1"] = {p1 <= tol, p1, std::nullopt};

  const double p2 = std::abs(detail::colsub_det(Rs, Rs, M) + detail::colsub_det(Rs, M, Rs) +
                             detail::colsub_det(M, Rs, Rs));
  rep.entries["p2"] = {p2 <= tol, p2, std::nullopt};

  const Complex p3c =
      detail::colsub_det(Rs, M, M) + detail::colsub_det(M, M, Rs) +
      0.25 * (detail::colsub_det(bf.R, Rs, Rs) + detail::colsub_det(Rs, bf.R, Rs) +
              detail::colsub_det(Rs, Rs, bf.R));
  const double p3 = std::abs(p3c);
  rep.entries["p3"] = {p3 <= tol, p3, std::nullopt};

  const Complex p4c =
      M.determinant() +
      0.25 * (detail::colsub_det(Rs, bf.R, M) + detail::colsub_det(bf.R, Rs, M) +
              detail::colsub_det(M, Rs, bf.R) + detail::colsub_det(M, bf.R, Rs) +
              detail::colsub_det(Rs, M, bf.R) + detail::colsub_det(bf.R, M, Rs));
  const double p4 = std::abs(p4c);
  rep.entries["p4"] = {p4 <= tol, p4, std::nullopt};

  const double margin =
      3.0 - 0.25 * (bf.A.squaredNorm() + bf.B.squaredNorm()) - std::abs(bf.R.trace());
  rep.entries["p5"] = {margin > 1e-9, std::max(0.0, -margin), margin};

  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < bnd; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / bnd);
    const Eigen::Matrix3cd Mz =
        M - 0.5 * (std::conj(z) * bf.R + z * Rs);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(
        0.5 * (Mz + Mz.adjoint()), Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues()(0));
  }
  rep.entries["p2S5"] = {worst >= -tol, std::max(0.0, -worst), std::nullopt};

  CMatrix P = CMatrix::Identity(5, 5);
  for (int k = 0; k < 5; ++k) P = P * T;
  const double nil = max_abs(P);
  rep.entries["nilpotent5"] = {nil <= tol, nil, std::nullopt};

  rep.verdict = true;
  for (const auto& [name, entry] : rep.entries) rep.verdict = rep.verdict && entry.pass;
  return rep;
}

/// Matches T against the catalogue of the part: the shift itself, the two
/// one-parameter families, or none. The condition report is computed first
/// and a failing verdict short-circuits to none.
inline std::pair<FamilyTag, ConditionReport> classify(const CMatrix& T, double tol = 1e-6) {
  if (!(tol > 0.0)) throw InputError("classify: tol must be positive");
  ConditionReport rep = check_corollary_conditions(T);
  FamilyTag tag;
  if (!rep.verdict) return {tag, rep};

  double off = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (j != i + 1) off = std::max(off, std::abs(T(i, j)));
  const Complex x = T(0, 1);
  const Complex r = T(1, 2);
  const bool structural = off <= tol && std::abs(T(2, 3) - std::conj(r)) <= tol &&
                          std::abs(T(3, 4) - x) <= tol;
  if (!structural) return {tag, rep};

  const double a = 2.0 / std::sqrt(3.0);
  double theta = std::arg(r);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (std::abs(x - a) <= tol && std::abs(std::abs(r) - a) <= tol) {
    if (std::min(theta, 2.0 * std::numbers::pi - theta) <= tol)
      tag = {Family::shift_itself, std::nullopt};
    else
      tag = {Family::family1, theta};
  } else if (std::abs(x + std::sqrt(3.0)) <= tol &&
             std::abs(std::abs(r) - 1.0 / std::sqrt(2.0)) <= tol) {
    tag = {Family::family2, theta};
  }
  return {tag, rep};
}

/// Representatives of the part of the normalized shift in low dimensions.
/// Dimension 3 carries a one-parameter unitary orbit, dimension 4 a second
/// superdiagonal form next to the shift, dimension 5 the two families.
inline std::vector<CMatrix> reference_family(int dim, double theta) {
  switch (dim) {
    case 2:
      return {build_shift(2)};
    case 3:
      return {conjugate_by_diagonal_unitary(build_shift(3), {theta, 0.0, theta})};
    case 4: {
      const double a = 1.0 / std::cos(std::numbers::pi / 5.0);
      CMatrix T2 = CMatrix::Zero(4, 4);
      T2(0, 1) = -2.0 / a;
      T2(1, 2) = 2.0 * (1.0 - 1.0 / (a * a));
      T2(2, 3) = -2.0 / a;
      return {build_shift(4), T2};
    }
    case 5:
      return {family1(theta), family2(theta)};
    default:
      throw InputError("reference_family: dim must be between 2 and 5");
  }
}

}  // namespace harnack
