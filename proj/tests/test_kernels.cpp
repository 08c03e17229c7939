#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "harnack/kernels.hpp"
#include "harnack/shift5.hpp"

using namespace harnack;

TEST_CASE("kernel at the origin is rho times the identity", "[kernels]") {
  for (double rho : {0.5, 1.0, 2.0, 7.0}) {
    const KernelEvaluation e = rho_kernel(build_shift(5), Complex(0.0), rho);
    REQUIRE(max_abs(e.K.matrix() - rho * CMatrix::Identity(5, 5)) <= 1e-14);
    REQUIRE(e.min_eigenvalue == Catch::Approx(rho).margin(1e-12));
  }
}

TEST_CASE("kernel of a scalar contraction", "[kernels]") {
  // 1x1 case: K = 2 Re (1 - conj(z) c)^{-1} + rho - 2.
  const Complex c(0.4, 0.3);
  const Complex z(0.2, -0.5);
  CMatrix T(1, 1);
  T(0, 0) = c;
  const double rho = 1.7;
  const KernelEvaluation e = rho_kernel(T, z, rho);
  const double expected =
      2.0 * (1.0 / (Complex(1.0) - std::conj(z) * c)).real() + rho - 2.0;
  REQUIRE(e.K.matrix()(0, 0).real() == Catch::Approx(expected).margin(1e-14));
  REQUIRE(e.min_eigenvalue == Catch::Approx(expected).margin(1e-14));
}

TEST_CASE("kernel evaluations are exactly Hermitian after symmetrization", "[kernels]") {
  const CMatrix T = family2(0.9);
  const KernelEvaluation e = rho_kernel(T, Complex(0.3, 0.6), 2.0);
  REQUIRE(max_abs(e.K.matrix() - e.K.matrix().adjoint()) == 0.0);
  REQUIRE(e.symmetrization_defect <= 1e-13);
}

TEST_CASE("kernel input validation", "[kernels]") {
  const CMatrix S = build_shift(5);
  REQUIRE_THROWS_AS(rho_kernel(S, Complex(1.1, 0.0), 2.0), InputError);
  REQUIRE_THROWS_AS(rho_kernel(S, Complex(0.0), 0.0), InputError);
  REQUIRE_THROWS_AS(rho_kernel(S, Complex(0.0), -2.0), InputError);
  CMatrix rect(2, 3);
  rect.setZero();
  REQUIRE_THROWS_AS(rho_kernel(rect, Complex(0.0), 2.0), DimensionError);
  // boundary point aligned with a unimodular eigenvalue
  REQUIRE_THROWS_AS(rho_kernel(CMatrix::Identity(2, 2), Complex(1.0, 0.0), 2.0),
                    SingularityError);
}

TEST_CASE("boundary spectrum of the shift kernel is theta independent", "[kernels]") {
  // Frozen spectrum of K_z^2(S) on the unit circle.
  const double expected[5] = {0.0, 0.782128655, 0.888888889, 0.920421299, 7.40856116};
  const CMatrix S = build_shift(5);
  const KernelEvaluation e0 = rho_kernel(S, std::polar(1.0, 0.3), 2.0);
  for (int i = 0; i < 5; ++i)
    REQUIRE(e0.K.eigenvalues()(i) == Catch::Approx(expected[i]).margin(1e-7));
  const KernelEvaluation e1 = rho_kernel(S, std::polar(1.0, 1.1), 2.0);
  for (int i = 0; i < 5; ++i)
    REQUIRE(e0.K.eigenvalues()(i) ==
            Catch::Approx(e1.K.eigenvalues()(i)).margin(1e-12));
}

TEST_CASE("kernel null space on the boundary is one dimensional", "[kernels]") {
  const NullVectorParams params;
  for (const CMatrix& T : {build_shift(5), family1(2.1), family2(0.4)}) {
    const Complex z = std::polar(1.0, 0.7);
    const KernelEvaluation e = rho_kernel(T, z, 2.0);
    const auto basis = kernel_null_space(e);
    REQUIRE(basis.size() == 1);
    // the null direction is the advertised vector, up to phase
    const CVector v = boundary_null_vector(params, z).normalized();
    REQUIRE(std::abs(basis[0].dot(v)) == Catch::Approx(1.0).margin(1e-10));
  }
  // strictly inside the disk the kernel is positive definite
  const KernelEvaluation inner = rho_kernel(build_shift(5), Complex(0.45, 0.0), 2.0);
  REQUIRE(kernel_null_space(inner).empty());
  REQUIRE(inner.min_eigenvalue > 1e-3);
  REQUIRE_THROWS_AS(kernel_null_space(inner, 0.0), InputError);
}

TEST_CASE("boundary null vector components", "[kernels]") {
  const NullVectorParams p;
  const Complex z = std::polar(1.0, 2.2);
  const CVector v = boundary_null_vector(p, z);
  REQUIRE(v(0) == p.v0);
  REQUIRE(std::abs(v(1) - p.v1 * z) <= 1e-15);
  REQUIRE(v(2) == Complex(0.0));
  REQUIRE(std::abs(v(3) + p.v1 * z * z * z) <= 1e-15);
  REQUIRE(std::abs(v(4) + p.v0 * z * z * z * z) <= 1e-15);
  REQUIRE_THROWS_AS(boundary_null_vector({Complex(0.0), Complex(0.0)}, z), InputError);
}

TEST_CASE("ker condition holds on the part and detects scaling", "[kernels]") {
  REQUIRE(verify_ker_condition(build_shift(5)).pass);
  REQUIRE(verify_ker_condition(build_shift(5)).residual <= 1e-12);
  REQUIRE(verify_ker_condition(family1(2.1)).pass);
  REQUIRE(verify_ker_condition(family2(0.4)).pass);

  // Scaling by 0.99 moves the kernel off the null family by a visible margin.
  const ConditionEntry scaled = verify_ker_condition(0.99 * build_shift(5));
  REQUIRE_FALSE(scaled.pass);
  REQUIRE(scaled.residual >= 0.05);
  REQUIRE(scaled.residual <= 0.12);

  // A diagonal perturbation destroys the identity outright.
  CMatrix T = build_shift(5);
  T(1, 1) = 0.4;
  T(2, 2) = 0.2;
  const ConditionEntry broken = verify_ker_condition(T);
  REQUIRE_FALSE(broken.pass);
  REQUIRE(broken.residual > 1.0);
}

TEST_CASE("ker condition input validation", "[kernels]") {
  REQUIRE_THROWS_AS(verify_ker_condition(build_shift(4)), DimensionError);
  REQUIRE_THROWS_AS(verify_ker_condition(build_shift(5), {}, 0), InputError);
  REQUIRE_THROWS_AS(
      verify_ker_condition(build_shift(5), {Complex(0.0), Complex(0.0)}),
      InputError);
  REQUIRE_THROWS_AS(verify_ker_condition(1.25 * CMatrix::Identity(5, 5)),
                    PreconditionError);
}

TEST_CASE("power coefficients for quadratic minimal polynomials", "[kernels]") {
  REQUIRE(resolvent_power_coeffs(Complex(0.7), Complex(0.4), 1) ==
          std::pair<Complex, Complex>{Complex(0.0), Complex(1.0)});
  REQUIRE(resolvent_power_coeffs(Complex(0.7), Complex(0.4), 2) ==
          std::pair<Complex, Complex>{Complex(1.0), Complex(0.0)});
  REQUIRE_THROWS_AS(resolvent_power_coeffs(Complex(0.7), Complex(0.4), 0), InputError);

  SECTION("separated eigenvalues, non-normal representative") {
    const Complex l1(0.7, 0.2), l2(-0.3, 0.5);
    CMatrix R = CMatrix::Zero(3, 3);
    R(0, 1) = Complex(1.0);
    R(1, 1) = l1;
    R(1, 2) = Complex(1.0);
    R(2, 2) = l2;
    CMatrix P = R;
    for (int n = 2; n <= 6; ++n) {
      P = P * R;
      const auto [A, B] = resolvent_power_coeffs(l1, l2, n);
      REQUIRE(max_abs(P - (A * R * R + B * R)) <= 1e-12);
    }
  }

  SECTION("confluent eigenvalues, Jordan representative") {
    const Complex l(0.6, -0.1);
    CMatrix R = CMatrix::Zero(3, 3);
    R(1, 1) = l;
    R(1, 2) = Complex(1.0);
    R(2, 2) = l;
    CMatrix P = R;
    for (int n = 2; n <= 6; ++n) {
      P = P * R;
      const auto [A, B] = resolvent_power_coeffs(l, l, n);
      REQUIRE(max_abs(P - (A * R * R + B * R)) <= 1e-12);
    }
  }

  SECTION("continuity across the confluent switch") {
    const Complex l(0.6, 0.0);
    const Complex g(5e-8, 0.0);
    for (int n = 3; n <= 6; ++n) {
      const auto [Ad, Bd] = resolvent_power_coeffs(l + g, l - g, n);
      const auto [Ac, Bc] = resolvent_power_coeffs(l, l, n);
      REQUIRE(std::abs(Ad - Ac) <= 1e-5);
      REQUIRE(std::abs(Bd - Bc) <= 1e-5);
    }
  }
}

TEST_CASE("expansion coefficients reproduce the resolvent", "[kernels]") {
  const Complex l1(0.7, 0.2), l2(-0.3, 0.5);
  CMatrix R = CMatrix::Zero(3, 3);
  R(0, 1) = Complex(1.0);
  R(1, 1) = l1;
  R(1, 2) = Complex(1.0);
  R(2, 2) = l2;
  for (const Complex z : {Complex(0.0), Complex(0.5, 0.3), std::polar(1.0, 1.9)}) {
    const auto [c1, c2] = resolvent_expansion_coeffs(l1, l2, z);
    const CMatrix direct = (CMatrix::Identity(3, 3) - std::conj(z) * R).inverse();
    const CMatrix expanded = CMatrix::Identity(3, 3) + c1 * R + c2 * (R * R);
    REQUIRE(max_abs(direct - expanded) <= 1e-12);
  }
  REQUIRE_THROWS_AS(resolvent_expansion_coeffs(Complex(1.0), Complex(0.0), Complex(1.0)),
                    SingularityError);
}

TEST_CASE("resolvent via expansion checks the spectrum", "[kernels]") {
  // Nilpotent R: the expansion is the exact Neumann sum I + conj(z) R + conj(z)^2 R^2.
  const BlockForm bf = block_decompose(family1(1.4));
  const CMatrix R = bf.R;
  const Complex z = std::polar(1.0, 0.4);
  const CMatrix via = resolvent_via_expansion(R, Complex(0.0), Complex(0.0), z);
  const CMatrix direct =
      CMatrix::Identity(3, 3) + std::conj(z) * R + std::conj(z) * std::conj(z) * R * R;
  REQUIRE(max_abs(via - direct) <= 1e-13);
  REQUIRE_THROWS_AS(resolvent_via_expansion(R, Complex(0.5), Complex(0.0), z),
                    PreconditionError);
  REQUIRE_THROWS_AS(resolvent_via_expansion(build_shift(4), Complex(0.0), Complex(0.0), z),
                    DimensionError);
  REQUIRE_THROWS_AS(resolvent_via_expansion(R, Complex(0.0), Complex(0.0), Complex(2.0)),
                    InputError);
}
