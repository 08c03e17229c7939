#pragma once

#include <memory>
#include <mutex>

#include "harnack/core.hpp"

namespace harnack {

/// Immutable Hermitian matrix with lazily computed, cached spectral data.
/// Construction rejects inputs whose Hermitian defect exceeds
/// 1e-12 * (1 + max entry modulus) and stores the symmetrized matrix.
class HermitianForm {
 public:
  explicit HermitianForm(const CMatrix& X) {
    require_square(X, "HermitianForm");
    require_finite(X, "HermitianForm");
    const double defect = max_abs(X - X.adjoint());
    if (defect > 1e-12 * (1.0 + max_abs(X)))
      throw InputError("HermitianForm: matrix is not Hermitian (defect " +
                       std::to_string(defect) + ")");
    mat_ = 0.5 * (X + X.adjoint());
    cache_ = std::make_shared<Cache>();
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMatrix& matrix() const { return mat_; }

  /// Eigenvalues in ascending order, computed on first use and shared by copies.
  const Eigen::VectorXd& eigenvalues() const {
    std::call_once(cache_->flag, [this] {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
      cache_->evals = es.eigenvalues();
    });
    return cache_->evals;
  }

  double min_eigenvalue() const { return eigenvalues()(0); }
  double max_eigenvalue() const { return eigenvalues()(dim() - 1); }

  /// Spectral norm.
  double operator_norm() const {
    return std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue()));
  }

 private:
  struct Cache {
    std::once_flag flag;
    Eigen::VectorXd evals;
  };

  CMatrix mat_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace harnack
