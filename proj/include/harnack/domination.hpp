#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "harnack/core.hpp"
#include "harnack/grid.hpp"
#include "harnack/kernels.hpp"
#include "harnack/radii.hpp"

namespace harnack {

/// Outcome at one grid point z. c2_min is the smallest admissible c^2 there,
/// the largest eigenvalue of W* K1 W with W spanning the range of K0 scaled
/// by the inverse square roots of its eigenvalues. null_residual is the worst
/// ||K1 u|| over null directions u of K0; domination requires the null space
/// of K0 to sit inside the null space of K1.
struct DominationSample {
  Complex z;
  bool feasible = false;
  double c2_min = 0.0;
  double null_residual = 0.0;
};

struct DominationCertificate {
  bool feasible = false;
  std::optional<double> c;
  double rho = 2.0;
  double tol = 1e-8;
  double cap = 1e6;
  double max_c2_min = 0.0;
  double worst_null_residual = 0.0;
  GridSpec grid;
  std::vector<DominationSample> samples;
};

/// Searches for the smallest c with K_z^rho(T1) <= c^2 K_z^rho(T0) across the
/// grid. Feasibility fails at a sample when K0 has a genuinely negative
/// eigenvalue, when a null direction of K0 leaks into the range of K1, or
/// when the pointwise constant exceeds cap. The certified constant is the
/// grid maximum of the pointwise constants, floored at one.
inline DominationCertificate domination_constant(const CMatrix& T1, const CMatrix& T0,
                                                 double rho = 2.0,
                                                 const GridSpec& grid = default_harnack_grid(),
                                                 double tol = 1e-8, double cap = 1e6) {
  require_square(T1, "domination_constant");
  require_square(T0, "domination_constant");
  require_finite(T1, "domination_constant");
  require_finite(T0, "domination_constant");
  if (T1.rows() != T0.rows())
    throw DimensionError("domination_constant: operators must have equal dimensions");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw InputError("domination_constant: rho must be positive and finite");
  if (!(tol > 0.0)) throw InputError("domination_constant: tol must be positive");
  if (!(cap > 0.0)) throw InputError("domination_constant: cap must be positive");
  validate_grid(grid);
  if (spectral_radius_of(T1) > 1.0 + 1e-8 || spectral_radius_of(T0) > 1.0 + 1e-8)
    throw PreconditionError(
        "domination_constant: spectra must lie in the closed unit disk");

  DominationCertificate cert;
  cert.rho = rho;
  cert.tol = tol;
  cert.cap = cap;
  cert.grid = grid;
  cert.feasible = true;

  std::vector<Complex> pts = interior_samples(grid);
  {
    const std::vector<Complex> bpts = boundary_samples(grid);
    pts.insert(pts.end(), bpts.begin(), bpts.end());
  }
  constexpr double kRankTol = 1e-8;

  for (const Complex& z : pts) {
    DominationSample s;
    s.z = z;
    try {
      const KernelEvaluation e0 = rho_kernel(T0, z, rho);
      const KernelEvaluation e1 = rho_kernel(T1, z, rho);
      Eigen::SelfAdjointEigenSolver<CMatrix> es0(e0.K.matrix());
      const Eigen::VectorXd w = es0.eigenvalues();
      const double thr = kRankTol * (1.0 + w.cwiseAbs().maxCoeff());
      bool ok = true;
      if (w(0) < -thr) ok = false;  // K0 indefinite, no comparison possible

      std::vector<int> null_idx, range_idx;
      for (int i = 0; i < w.size(); ++i)
        (std::abs(w(i)) <= thr ? null_idx : range_idx).push_back(i);

      const double k1norm = e1.K.operator_norm();
      for (int i : null_idx) {
        const double res = (e1.K.matrix() * es0.eigenvectors().col(i)).norm();
        s.null_residual = std::max(s.null_residual, res);
      }
      if (s.null_residual > tol * (1.0 + k1norm)) ok = false;

      if (!range_idx.empty()) {
        CMatrix W(w.size(), static_cast<Eigen::Index>(range_idx.size()));
        for (size_t j = 0; j < range_idx.size(); ++j)
          W.col(static_cast<Eigen::Index>(j)) =
              es0.eigenvectors().col(range_idx[j]) / std::sqrt(w(range_idx[j]));
        const CMatrix G = W.adjoint() * e1.K.matrix() * W;
        Eigen::SelfAdjointEigenSolver<CMatrix> esg(0.5 * (G + G.adjoint()),
                                                   Eigen::EigenvaluesOnly);
        s.c2_min = esg.eigenvalues()(esg.eigenvalues().size() - 1);
      }
      if (s.c2_min > cap) ok = false;
      s.feasible = ok;
    } catch (const SingularityError&) {
      s.feasible = false;
      s.c2_min = std::numeric_limits<double>::infinity();
    }
    cert.feasible = cert.feasible && s.feasible;
    cert.max_c2_min = std::max(cert.max_c2_min, s.c2_min);
    cert.worst_null_residual = std::max(cert.worst_null_residual, s.null_residual);
    cert.samples.push_back(s);
  }
  if (cert.feasible) cert.c = std::max(1.0, std::sqrt(std::max(cert.max_c2_min, 0.0)));
  return cert;
}

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<double> c;
  DominationCertificate forward;
  DominationCertificate backward;
};

/// Mutual domination: T1 and T0 lie in the same part exactly when each
/// dominates the other with a finite constant. c is the larger of the two
/// certified constants.
inline EquivalenceResult is_equivalent(const CMatrix& T1, const CMatrix& T0,
                                       double rho = 2.0,
                                       const GridSpec& grid = default_harnack_grid(),
                                       double tol = 1e-8, double cap = 1e6) {
  EquivalenceResult r;
  r.forward = domination_constant(T1, T0, rho, grid, tol, cap);
  r.backward = domination_constant(T0, T1, rho, grid, tol, cap);
  r.equivalent = r.forward.feasible && r.backward.feasible;
  if (r.equivalent) r.c = std::max(*r.forward.c, *r.backward.c);
  return r;
}

/// The zero part collects the strict contractions of the class: operators
/// with rho-radius strictly below one.
inline bool in_zero_part(const CMatrix& T, double rho,
                         const GridSpec& grid = default_disk_grid()) {
  return rho_radius(T, rho, grid, 1e-8).value < 1.0 - 1e-7;
}

}  // namespace harnack
