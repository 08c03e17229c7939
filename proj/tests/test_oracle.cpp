#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "harnack/oracle.hpp"
#include "harnack/shift5.hpp"

using namespace harnack;

namespace {

constexpr PolyIdentity kAll[] = {PolyIdentity::eq1, PolyIdentity::eq2,
                                 PolyIdentity::eq3, PolyIdentity::eq4};

}  // namespace

TEST_CASE("polynomial identities vanish on the families", "[oracle]") {
  for (double theta : {0.0, 0.7, 2.1, 4.9}) {
    for (const CMatrix& T : {family1(theta), family2(theta)}) {
      const BlockForm bf = block_decompose(T);
      for (PolyIdentity id : kAll) {
        const PolyIdentityCheck chk =
            check_polynomial_identity(bf, {}, bf.R.trace(), id);
        CAPTURE(theta, poly_identity_name(id), chk.max_residual);
        REQUIRE(chk.pass);
        REQUIRE(chk.max_residual <= 1e-12);
        REQUIRE(chk.sample_values.size() == static_cast<size_t>(chk.max_degree + 1));
      }
    }
  }
}

TEST_CASE("identity degrees", "[oracle]") {
  const BlockForm bf = block_decompose(build_shift(5));
  REQUIRE(check_polynomial_identity(bf, {}, Complex(0.0), PolyIdentity::eq1).max_degree == 4);
  REQUIRE(check_polynomial_identity(bf, {}, Complex(0.0), PolyIdentity::eq2).max_degree == 6);
  REQUIRE(check_polynomial_identity(bf, {}, Complex(0.0), PolyIdentity::eq3).max_degree == 4);
  REQUIRE(check_polynomial_identity(bf, {}, Complex(0.0), PolyIdentity::eq4).max_degree == 4);
}

TEST_CASE("a corner perturbation is caught with its exact coefficient", "[oracle]") {
  BlockForm bf = block_decompose(family1(0.7));
  bf.B(0) += Complex(0.1, 0.0);
  const PolyIdentityCheck chk =
      check_polynomial_identity(bf, {}, bf.R.trace(), PolyIdentity::eq4);
  REQUIRE_FALSE(chk.pass);
  // Interpolate the degree-4 coefficients from the five samples: the leak
  // sits entirely in z^4 and equals the perturbation.
  const int pts = 5;
  for (int m = 0; m < pts; ++m) {
    Complex coeff(0.0);
    for (int k = 0; k < pts; ++k) {
      const Complex zk = std::polar(1.0, 2.0 * std::numbers::pi * k / pts);
      coeff += chk.sample_values[k] * ipow(std::conj(zk), m);
    }
    coeff /= static_cast<double>(pts);
    if (m == 4)
      REQUIRE(std::abs(coeff) == Catch::Approx(0.1).margin(1e-12));
    else
      REQUIRE(std::abs(coeff) <= 1e-12);
  }
}

TEST_CASE("identity precondition rejects wrong lambda or wrong blocks", "[oracle]") {
  const BlockForm bf = block_decompose(family1(0.7));
  // R is nilpotent with R^2 != 0, so R^3 = 0.5 R^2 is false.
  REQUIRE_THROWS_AS(check_polynomial_identity(bf, {}, Complex(0.5), PolyIdentity::eq1),
                    PreconditionError);
  BlockForm random = bf;
  random.R << Complex(0.3), Complex(0.1), Complex(0.0), Complex(0.2), Complex(-0.4),
      Complex(0.5), Complex(0.0), Complex(0.6), Complex(0.1);
  REQUIRE_THROWS_AS(
      check_polynomial_identity(random, {}, random.R.trace(), PolyIdentity::eq1),
      PreconditionError);
  REQUIRE_THROWS_AS(check_polynomial_identity(bf, {Complex(0.0), Complex(0.0)},
                                              Complex(0.0), PolyIdentity::eq1),
                    InputError);
}

TEST_CASE("scalar relations hold on the families", "[oracle]") {
  for (const CMatrix& T : {build_shift(5), family1(1.9), family2(0.3)}) {
    const ScalarRelationReport rep = check_scalar_relations(block_decompose(T));
    for (const auto& [name, entry] : rep.entries) {
      CAPTURE(name, entry.residual);
      REQUIRE(entry.pass);
    }
    REQUIRE(rep.all_pass);
  }
}

TEST_CASE("scalar relations catch a corner mismatch", "[oracle]") {
  BlockForm bf = block_decompose(family1(0.7));
  bf.B(0) += Complex(0.1, 0.0);
  const ScalarRelationReport rep = check_scalar_relations(bf);
  REQUIRE_FALSE(rep.all_pass);
  REQUIRE_FALSE(rep.entries.at("a3_eq_b1").pass);
  REQUIRE(rep.entries.at("a3_eq_b1").residual == Catch::Approx(0.1).margin(1e-12));
  REQUIRE(rep.entries.at("conjugate_pair").pass);
}

TEST_CASE("trace identities for a quadratic-spectrum matrix", "[oracle]") {
  // Upper triangular with eigenvalues {0, 0.5, 0.2}: sigma1 = 0.7, sigma2 = 0.1.
  CMatrix R = CMatrix::Zero(3, 3);
  R(0, 0) = Complex(0.5);
  R(0, 1) = Complex(1.0);
  R(1, 1) = Complex(0.2);
  R(1, 2) = Complex(-0.3);
  const Complex s1(0.7), s2(0.1);
  const TraceCheckReport rep = trace_cross_check(R, s1, s2);
  REQUIRE(rep.pass);
  REQUIRE(rep.residual1 <= 1e-12);
  REQUIRE(rep.residual2 <= 1e-12);
  REQUIRE(std::abs(rep.trace1 - Complex(-0.2)) <= 1e-12);
  REQUIRE(std::abs(rep.trace2 - Complex(-0.5)) <= 1e-12);
  REQUIRE(rep.contradiction_gap == Catch::Approx(0.1).margin(1e-15));
  // A putative -3 sigma2 target misses by exactly twice the gap.
  REQUIRE(std::abs(rep.trace2 - Complex(-0.3)) ==
          Catch::Approx(2.0 * rep.contradiction_gap).margin(1e-12));
}

TEST_CASE("trace identities degenerate gracefully in the nilpotent case", "[oracle]") {
  const BlockForm bf = block_decompose(family2(1.1));
  const TraceCheckReport rep = trace_cross_check(bf.R, Complex(0.0), Complex(0.0));
  REQUIRE(rep.pass);
  REQUIRE(rep.contradiction_gap == 0.0);
}

TEST_CASE("trace cross check validates the spectrum", "[oracle]") {
  CMatrix R = CMatrix::Zero(3, 3);
  R(0, 0) = Complex(0.5);
  R(1, 1) = Complex(0.2);
  REQUIRE_THROWS_AS(trace_cross_check(R, Complex(0.9), Complex(0.1)),
                    PreconditionError);
  REQUIRE_THROWS_AS(trace_cross_check(build_shift(4), Complex(0.0), Complex(0.0)),
                    DimensionError);
}

TEST_CASE("quadratic closure roots", "[oracle]") {
  const auto [r1, r2] = quadratic_closure_roots();
  REQUIRE(std::abs(r1 - Complex(1.1547005383792515, 0.0)) <= 1e-12);
  REQUIRE(std::abs(r2 - Complex(-1.7320508075688772, 0.0)) <= 1e-12);
  // Vieta: product -2, sum -v1/v0.
  REQUIRE(std::abs(r1 * r2 + Complex(2.0)) <= 1e-12);
  REQUIRE(std::abs(r1 + r2 + Complex(1.0 / std::sqrt(3.0))) <= 1e-12);
  REQUIRE_THROWS_AS(quadratic_closure_roots({Complex(0.0), Complex(1.0)}), InputError);
}

TEST_CASE("the two corner values are exactly the closure roots", "[oracle]") {
  const auto [r1, r2] = quadratic_closure_roots();
  const BlockForm b1 = block_decompose(family1(0.6));
  const BlockForm b2 = block_decompose(family2(0.6));
  REQUIRE(std::abs(b1.A(0) - r1) <= 1e-12);
  REQUIRE(std::abs(b2.A(0) - r2) <= 1e-12);
}
