#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace harnack {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Argument has the wrong shape or length.
class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed value: non-finite entry, bad range, bad JSON field.
class InputError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of the operation does not hold for the input.
class PreconditionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A linear solve met a singular or numerically unusable system.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

inline double max_abs(const CMatrix& X) {
  return X.size() == 0 ? 0.0 : X.cwiseAbs().maxCoeff();
}

inline void require_square(const CMatrix& X, const char* who) {
  if (X.rows() == 0 || X.rows() != X.cols())
    throw DimensionError(std::string(who) + ": expected a nonempty square matrix, got " +
                         std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
}

inline void require_finite(const CMatrix& X, const char* who) {
  if (!X.allFinite()) throw InputError(std::string(who) + ": matrix has non-finite entries");
}

/// Largest singular value.
inline double operator_norm_of(const CMatrix& X) {
  if (max_abs(X) == 0.0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(X);
  return svd.singularValues()(0);
}

/// Largest eigenvalue modulus.
inline double spectral_radius_of(const CMatrix& X) {
  Eigen::ComplexEigenSolver<CMatrix> es(X, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// True when X^dim vanishes to roundoff, the test used to route boundary
/// resolvents through the exact finite Neumann sum.
inline bool is_nilpotent(const CMatrix& X, double tol = 1e-12) {
  const Eigen::Index n = X.rows();
  CMatrix P = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) P = P * X;
  const double scale = std::max(1.0, max_abs(X));
  return max_abs(P) <= tol * std::pow(scale, static_cast<double>(n));
}

/// Integer power, exact for zero bases where std::pow would produce NaN.
inline Complex ipow(Complex x, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// One named entry of a condition report. residual measures the distance
/// from satisfaction and is zero when the condition is met; margin carries
/// the slack of strict inequalities where one is defined.
struct ConditionEntry {
  bool pass = false;
  double residual = 0.0;
  std::optional<double> margin;
};

}  // namespace harnack
