#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "harnack/core.hpp"

namespace harnack {

/// Truncated shift of size dim_total with a constant superdiagonal weight.
/// The normalized weight 1/cos(pi/(dim_total+1)) makes the numerical radius
/// equal to one; unnormalized the weight is one.
inline CMatrix build_shift(int dim_total, bool normalized = true) {
  if (dim_total < 2) throw DimensionError("build_shift: dim_total must be at least 2");
  const double a =
      normalized ? 1.0 / std::cos(std::numbers::pi / (dim_total + 1)) : 1.0;
  CMatrix S = CMatrix::Zero(dim_total, dim_total);
  for (int i = 0; i + 1 < dim_total; ++i) S(i, i + 1) = a;
  return S;
}

/// Weights of the boundary null vector family
///   v(z) = (v0, v1 z, 0, -v1 z^3, -v0 z^4).
/// Defaults are the unit-norm weights with v1/v0 = 1/sqrt(3) that annihilate
/// the kernel of the normalized five-dimensional shift on the circle.
struct NullVectorParams {
  Complex v0{std::sqrt(3.0) / 2.0, 0.0};
  Complex v1{0.5, 0.0};
};

/// Blocks of the five-dimensional layout
///
///   [ 0  A  0 ]
///   [ 0  R  B ]
///   [ 0  0  0 ]
///
/// with A a row, R a 3x3 matrix and B a column. pattern_residual is the
/// largest modulus found on a position the layout requires to vanish
/// (column 0, row 4 and the corner (0,4)); within_tol records whether it
/// stays below the tolerance handed to block_decompose.
struct BlockForm {
  Eigen::RowVector3cd A;
  Eigen::Matrix3cd R;
  Eigen::Vector3cd B;
  double pattern_residual = 0.0;
  bool within_tol = true;
};

inline BlockForm block_decompose(const CMatrix& T, double tol = 1e-8) {
  require_square(T, "block_decompose");
  require_finite(T, "block_decompose");
  if (T.rows() != 5) throw DimensionError("block_decompose: expected a 5x5 matrix");
  if (!(tol >= 0.0)) throw InputError("block_decompose: tol must be nonnegative");
  BlockForm bf;
  bf.A = T.block<1, 3>(0, 1);
  bf.R = T.block<3, 3>(1, 1);
  bf.B = T.block<3, 1>(1, 4);
  double res = 0.0;
  for (int i = 0; i < 5; ++i) res = std::max(res, std::abs(T(i, 0)));
  for (int j = 0; j < 5; ++j) res = std::max(res, std::abs(T(4, j)));
  res = std::max(res, std::abs(T(0, 4)));
  bf.pattern_residual = res;
  bf.within_tol = res <= tol;
  return bf;
}

inline CMatrix assemble_block_form(const BlockForm& bf) {
  CMatrix T = CMatrix::Zero(5, 5);
  T.block<1, 3>(0, 1) = bf.A;
  T.block<3, 3>(1, 1) = bf.R;
  T.block<3, 1>(1, 4) = bf.B;
  return T;
}

/// U* T U for U = diag(e^{i phases[0]}, ..., e^{i phases[n-1]}).
inline CMatrix conjugate_by_diagonal_unitary(const CMatrix& T,
                                             const std::vector<double>& phases) {
  require_square(T, "conjugate_by_diagonal_unitary");
  require_finite(T, "conjugate_by_diagonal_unitary");
  const Eigen::Index n = T.rows();
  if (static_cast<Eigen::Index>(phases.size()) != n)
    throw DimensionError("conjugate_by_diagonal_unitary: need one phase per dimension");
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      out(j, k) = std::polar(1.0, phases[k] - phases[j]) * T(j, k);
  return out;
}

}  // namespace harnack
