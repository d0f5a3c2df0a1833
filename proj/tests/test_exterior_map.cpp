#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "taukit/exterior_map.hpp"

using namespace taukit;

namespace {

ExteriorMap ellipse() {
  ExteriorMap m;
  m.coeffs = CVector::Zero(1);
  m.coeffs(0) = 0.3;
  return m;
}

ExteriorMap three_coeff() {
  ExteriorMap m;
  m.b0 = Complex(0.05, 0.02);
  m.coeffs = CVector::Zero(3);
  m.coeffs(0) = 0.15;
  m.coeffs(1) = Complex(0.08, 0.05);
  m.coeffs(2) = 0.04;
  return m;
}

}  // namespace

TEST_CASE("validate_map rejects bad coefficients") {
  ExteriorMap m;
  m.r = -1.0;
  CHECK_THROWS_AS(validate_map(m), InputError);
  m.r = 0.0;
  CHECK_THROWS_AS(validate_map(m), InputError);
  m.r = 1.0;
  m.coeffs = CVector::Zero(1);
  m.coeffs(0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(validate_map(m), InputError);
  CHECK_NOTHROW(validate_map(ellipse()));
}

TEST_CASE("eval_g hand values on the ellipse map") {
  const ExteriorMap m = ellipse();
  // g(w) = w + 0.3/w
  CHECK(std::abs(eval_g(m, Complex(1, 0)) - Complex(1.3, 0)) < 1e-15);
  CHECK(std::abs(eval_g(m, Complex(0, 1)) - Complex(0, 0.7)) < 1e-15);
  CHECK(std::abs(eval_g(m, Complex(2, 0)) - Complex(2.15, 0)) < 1e-15);
  const Complex w(1.3, -0.4);
  const Real h = 1e-6;
  const Complex fd =
      (eval_g(m, w + h) - eval_g(m, w - h)) / (2.0 * h);
  CHECK(std::abs(eval_g_prime(m, w) - fd) < 1e-9);
}

TEST_CASE("inverse map round trips on both test maps") {
  for (const ExteriorMap& m : {ellipse(), three_coeff()}) {
    for (const Complex z : {Complex(2.1, 0.4), Complex(-1.8, 1.1),
                            Complex(0.3, -2.6), Complex(5.0, 5.0)}) {
      const Complex w = eval_G(m, z);
      CHECK(std::abs(w) >= 1.0);
      CHECK(std::abs(eval_g(m, w) - z) < 1e-11 * (1.0 + std::abs(z)));
    }
    const Complex z(3.0, -1.0);
    const Real h = 1e-6;
    const Complex fd = (eval_G(m, z + h) - eval_G(m, z - h)) / (2.0 * h);
    CHECK(std::abs(eval_G_prime(m, z) - fd) < 1e-8);
  }
}

TEST_CASE("eval_G rejects interior points") {
  CHECK_THROWS_AS(eval_G(ellipse(), Complex(0.1, 0.05)), NumericsError);
}

TEST_CASE("sampling demands a power of two") {
  const ExteriorMap m = ellipse();
  CHECK_THROWS_AS(sample(m, 63), InputError);
  CHECK_THROWS_AS(sample(m, 32), InputError);
  const SampledContour c = sample(m, 64);
  CHECK(c.samples() == 64);
  CHECK(c.guard_band() > 0.0);
  // z(0) = g(1) = 1.3, dz/dsigma at 0 = i g'(1) = i(1 - 0.3)
  CHECK(std::abs(c.z(0) - Complex(1.3, 0)) < 1e-15);
  CHECK(std::abs(c.dz(0) - Complex(0, 0.7)) < 1e-13);
}

TEST_CASE("spectral derivative agrees with the analytic one") {
  CHECK(spectral_consistency(sample(three_coeff(), 256)) < 1e-10);
  CHECK(spectral_consistency(sample(ellipse(), 64)) < 1e-10);
}

TEST_CASE("winding number and point location") {
  const SampledContour c = sample(three_coeff(), 1024);
  CHECK(winding_number(c, Complex(0, 0)) == 1);
  CHECK(winding_number(c, Complex(0.3, 0.2)) == 1);
  CHECK(winding_number(c, Complex(5, 0)) == 0);
  CHECK(winding_number(c, Complex(-2, -2)) == 0);
  CHECK(point_location(c, Complex(0, 0)) == Location::Interior);
  CHECK(point_location(c, Complex(4, 4)) == Location::Exterior);
  // a point essentially on the curve
  CHECK(point_location(c, c.z(17)) == Location::NearBoundary);
  CHECK(boundary_distance(c, c.z(17)) < 1e-6);
}

TEST_CASE("univalence check catches an overlapping map") {
  ExteriorMap bad;
  bad.coeffs = CVector::Zero(1);
  bad.coeffs(0) = 2.0;  // w + 2/w folds over itself
  const UnivalenceReport rep = check_univalent(bad, 1024);
  CHECK(!rep.ok);
  CHECK(!rep.failure.empty());
  CHECK_THROWS_AS(require_univalent(bad, 1024), UnivalenceLost);
  CHECK(check_univalent(three_coeff()).ok);
}

TEST_CASE("area closed form against boundary quadrature") {
  const ExteriorMap m = three_coeff();
  // pi (r^2 - sum k |b_k|^2), coefficients from three_coeff
  const Real want =
      kPi * (1.0 - (0.15 * 0.15 + 2.0 * (0.08 * 0.08 + 0.05 * 0.05) +
                    3.0 * 0.04 * 0.04));
  CHECK(area(m) == doctest::Approx(want).epsilon(1e-14));
  CHECK(std::abs(area_quadrature(sample(m, 4096)) - area(m)) < 1e-10);

  ExteriorMap thin;
  thin.r = 0.5;
  thin.coeffs = CVector::Zero(2);
  thin.coeffs(1) = 0.5;  // r^2 - 2|b_2|^2 < 0
  CHECK_THROWS_AS(area(thin), NonpositiveArea);
}

TEST_CASE("Faber polynomials of the ellipse by hand") {
  const ExteriorMap m = ellipse();
  // g^2 = w^2 + 0.6 + 0.09 w^-2, polynomial part w^2 + 0.6
  const FaberPolynomial f2 = faber(m, 2);
  REQUIRE(f2.degree == 2);
  CHECK(std::abs(f2.c(0) - Complex(0.6, 0)) < 1e-14);
  CHECK(std::abs(f2.c(1)) < 1e-14);
  CHECK(std::abs(f2.c(2) - Complex(1, 0)) < 1e-14);
  // g^3 = w^3 + 0.9 w + (tail), polynomial part w^3 + 0.9 w
  const FaberPolynomial f3 = faber(m, 3);
  REQUIRE(f3.degree == 3);
  CHECK(std::abs(f3.c(1) - Complex(0.9, 0)) < 1e-14);
  CHECK(std::abs(f3.c(0)) < 1e-14);
  CHECK(std::abs(f3.c(2)) < 1e-14);

  // defect F_2(G(z)) - z^2 = -(principal part of g^2)(G(z)) = -0.09 G^-2;
  // at z = g(2) = 2.15 that is exactly -0.09/4
  const Complex z = eval_g(m, Complex(2, 0));
  const Complex defect = eval_poly(f2, eval_G(m, z)) - z * z;
  CHECK(std::abs(defect + Complex(0.0225, 0)) < 1e-12);

  const Complex w(1.4, 0.5);
  const Real h = 1e-6;
  const Complex fd = (eval_poly(f3, w + h) - eval_poly(f3, w - h)) / (2.0 * h);
  CHECK(std::abs(eval_poly_prime(f3, w) - fd) < 1e-8);
}

TEST_CASE("constant Laurent term of powers of g") {
  const ExteriorMap m = ellipse();
  CHECK(std::abs(laurent_constant_term(m, 1)) < 1e-15);
  CHECK(std::abs(laurent_constant_term(m, 2) - Complex(0.6, 0)) < 1e-15);
  const ExteriorMap t = three_coeff();
  CHECK(std::abs(laurent_constant_term(t, 1) - t.b0) < 1e-15);
}

TEST_CASE("deformation forms: n = 0 is the constant i") {
  const ExteriorMap m = three_coeff();
  const SampledContour c = sample(m, 256);
  const CVector d0 = deformation_form(m, 0, c);
  for (int k = 0; k < c.samples(); ++k) {
    CHECK(std::abs(d0(k) - kI) < 1e-15);
  }
}

TEST_CASE("duality matrix is the identity") {
  for (const ExteriorMap& m : {ellipse(), three_coeff()}) {
    const CMatrix d = duality_matrix(m, 6, 4096);
    Real worst = 0.0;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        const Complex want = a == b ? Complex(1, 0) : Complex(0, 0);
        worst = std::max(worst, std::abs(d(a, b) - want));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("pad_map leaves the contour unchanged") {
  const ExteriorMap m = ellipse();
  const ExteriorMap p = pad_map(m, 5);
  CHECK(p.order() == 5);
  for (const Complex w : {Complex(1.0, 0.2), Complex(-0.6, 1.9)}) {
    CHECK(std::abs(eval_g(p, w) - eval_g(m, w)) < 1e-15);
  }
}
