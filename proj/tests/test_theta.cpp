#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "taukit/theta.hpp"

using namespace taukit;

namespace {

CMatrix omega1(Complex o) {
  CMatrix m(1, 1);
  m(0, 0) = o;
  return m;
}

CMatrix omega2() {
  CMatrix m(2, 2);
  m(0, 0) = Complex(0.2, 1.1);
  m(0, 1) = Complex(0.12, 0.06);
  m(1, 0) = Complex(0.12, 0.06);
  m(1, 1) = Complex(-0.15, 1.33);
  return m;
}

CVector zvec(Complex a) {
  CVector z(1);
  z(0) = a;
  return z;
}

CVector zvec2(Complex a, Complex b) {
  CVector z(2);
  z(0) = a;
  z(1) = b;
  return z;
}

// plain genus-1 series, summed wide enough that the tail is far below 1e-15
Complex brute_theta1(Complex z, Complex omega) {
  Complex acc = 0.0;
  for (int n = -30; n <= 30; ++n) {
    acc += std::exp(kI * kPi * Real(n) * Real(n) * omega +
                    2.0 * kPi * kI * Real(n) * z);
  }
  return acc;
}

}  // namespace

TEST_CASE("genus-1 values against a brute-force sum") {
  for (const Complex o : {Complex(0.21, 1.13), Complex(0, 1.1),
                          Complex(-0.35, 0.87)}) {
    const PeriodMatrix pm = make_period_matrix(omega1(o));
    for (const Complex z : {Complex(0.31, -0.22), Complex(0, 0),
                            Complex(0.5, 0.3), Complex(-1.7, 0.45)}) {
      CHECK(std::abs(theta(zvec(z), pm, 1e-14) - brute_theta1(z, o)) < 1e-13);
    }
  }
}

TEST_CASE("classical constant at the square lattice") {
  // theta(0 | i) = pi^{1/4} / Gamma(3/4)
  const PeriodMatrix pm = make_period_matrix(omega1(Complex(0, 1)));
  CHECK(std::abs(theta(zvec(Complex(0, 0)), pm, 1e-14) -
                 Complex(1.0864348112133082, 0)) < 1e-14);
}

TEST_CASE("parity") {
  const PeriodMatrix p1 = make_period_matrix(omega1(Complex(0.21, 1.13)));
  const CVector z1 = zvec(Complex(0.37, -0.41));
  CHECK(std::abs(theta(z1, p1) - theta(CVector(-z1), p1)) < 1e-12);

  const PeriodMatrix p2 = make_period_matrix(omega2());
  const CVector z2 = zvec2(Complex(0.3, 0.1), Complex(-0.2, 0.25));
  CHECK(std::abs(theta(z2, p2) - theta(CVector(-z2), p2)) < 1e-12);
}

TEST_CASE("integer periodicity") {
  const PeriodMatrix p2 = make_period_matrix(omega2());
  const CVector z = zvec2(Complex(0.3, 0.1), Complex(-0.2, 0.25));
  CVector shifted = z;
  shifted(0) += 2.0;
  shifted(1) -= 1.0;
  CHECK(std::abs(theta(z, p2) - theta(shifted, p2)) < 1e-12);
}

TEST_CASE("quasi-periodicity under lattice-vector shifts") {
  // theta(z + Omega l) = exp(-i pi l^T Omega l - 2 pi i l^T z) theta(z):
  // re-index the defining sum by n -> n - l
  const PeriodMatrix p1 = make_period_matrix(omega1(Complex(0.21, 1.13)));
  const CVector z1 = zvec(Complex(0.37, -0.41));
  {
    const Complex lhs = theta(zvec(z1(0) + p1.omega(0, 0)), p1);
    const Complex factor =
        std::exp(-kI * kPi * p1.omega(0, 0) - 2.0 * kPi * kI * z1(0));
    const Complex rhs = factor * theta(z1, p1);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-11);
  }
  const PeriodMatrix p2 = make_period_matrix(omega2());
  const CVector z2 = zvec2(Complex(0.3, 0.1), Complex(-0.2, 0.25));
  {
    CVector shifted = z2;
    shifted(0) += p2.omega(0, 0);
    shifted(1) += p2.omega(1, 0);
    const Complex factor =
        std::exp(-kI * kPi * p2.omega(0, 0) - 2.0 * kPi * kI * z2(0));
    const Complex rhs = factor * theta(z2, p2);
    CHECK(std::abs(theta(shifted, p2) - rhs) / std::abs(rhs) < 1e-11);
  }
}

TEST_CASE("characteristics: zero shift and the odd half-period") {
  const PeriodMatrix p1 = make_period_matrix(omega1(Complex(0.21, 1.13)));
  Characteristics zero;
  zero.xi_a = RVector::Zero(1);
  zero.xi_b = RVector::Zero(1);
  const CVector z = zvec(Complex(0.2, 0.33));
  CHECK(std::abs(theta_char(zero, z, p1) - theta(z, p1)) < 1e-13);

  Characteristics odd;
  odd.xi_a = RVector::Constant(1, 0.5);
  odd.xi_b = RVector::Constant(1, 0.5);
  CHECK(std::abs(theta_char(odd, zvec(Complex(0, 0)), p1)) < 1e-13);

  // genus 2: the two internal evaluation routes cross-check each other
  const PeriodMatrix p2 = make_period_matrix(omega2());
  Characteristics xi;
  xi.xi_a = RVector(2);
  xi.xi_a << 0.3, -0.45;
  xi.xi_b = RVector(2);
  xi.xi_b << 0.15, 0.7;
  CHECK_NOTHROW(theta_char(xi, zvec2(Complex(0.1, 0.05), Complex(-0.2, 0.1)), p2));
}

TEST_CASE("term-wise derivatives against finite differences") {
  const PeriodMatrix p2 = make_period_matrix(omega2());
  const CVector z = zvec2(Complex(0.17, 0.08), Complex(-0.32, 0.12));
  const Real h = 1e-5;
  for (int i = 0; i < 2; ++i) {
    IVector alpha = IVector::Zero(2);
    alpha(i) = 1;
    CVector up = z, dn = z;
    up(i) += h;
    dn(i) -= h;
    const Complex fd = (theta(up, p2, 1e-14) - theta(dn, p2, 1e-14)) / (2.0 * h);
    const Complex an = theta_deriv(z, p2, alpha, 1e-14);
    CHECK(std::abs(an - fd) / std::abs(an) < 1e-5);
  }
  // mixed second derivative vs FD of the first
  IVector alpha = IVector::Zero(2);
  alpha(0) = 1;
  alpha(1) = 1;
  IVector e1 = IVector::Zero(2);
  e1(0) = 1;
  CVector up = z, dn = z;
  up(1) += h;
  dn(1) -= h;
  const Complex fd =
      (theta_deriv(up, p2, e1, 1e-14) - theta_deriv(dn, p2, e1, 1e-14)) /
      (2.0 * h);
  const Complex an = theta_deriv(z, p2, alpha, 1e-14);
  CHECK(std::abs(an - fd) / std::abs(an) < 1e-5);

  IVector bad = IVector::Zero(2);
  bad(0) = 4;
  CHECK_THROWS_AS(theta_deriv(z, p2, bad, 1e-14), InputError);
}

TEST_CASE("modular inversion") {
  // z = 0, Omega = i is the self-dual point
  const PeriodMatrix sq = make_period_matrix(omega1(Complex(0, 1)));
  CHECK(modular_check(zvec(Complex(0, 0)), sq).residual < 1e-12);

  const PeriodMatrix p1 = make_period_matrix(omega1(Complex(0.21, 1.13)));
  CHECK(modular_check(zvec(Complex(0.23, 0.11)), p1).residual < 1e-10);

  const PeriodMatrix p2 = make_period_matrix(omega2());
  CHECK(modular_check(zvec2(Complex(0.12, 0.07), Complex(-0.08, 0.15)), p2)
            .residual < 1e-8);
}

TEST_CASE("period matrix validation") {
  CMatrix asym(2, 2);
  asym << Complex(0, 1), Complex(0.3, 0), Complex(0.1, 0), Complex(0, 1);
  CHECK_THROWS_AS(make_period_matrix(asym), InputError);

  CHECK_THROWS_AS(make_period_matrix(omega1(Complex(0.3, -0.9))),
                  DegenerateImOmega);

  CMatrix singular(2, 2);
  singular << Complex(0, 1), Complex(0, 1), Complex(0, 1), Complex(0, 1);
  CHECK_THROWS_AS(make_period_matrix(singular), DegenerateImOmega);

  CHECK_THROWS_AS(make_period_matrix(CMatrix::Zero(0, 0)), InputError);
}

TEST_CASE("truncation soundness: widening the box changes nothing") {
  const PeriodMatrix p2 = make_period_matrix(omega2());
  const RVector zero = RVector::Zero(2);
  const IVector none = IVector::Zero(2);
  for (const Complex a : {Complex(0.4, 0.3), Complex(-1.2, 0.8)}) {
    const CVector z = zvec2(a, Complex(0.1, -0.2));
    const int radius = theta_box_radius(z, p2, 0, 1e-10);
    CHECK(radius >= 1);
    const Complex v1 = theta_shifted_sum(z, p2, zero, zero, none, 1e-10);
    const Complex v2 = theta_shifted_sum(z, p2, zero, zero, none, 1e-10, radius);
    CHECK(std::abs(v1 - v2) < 1e-10);
  }
}

TEST_CASE("argument validation") {
  const PeriodMatrix p1 = make_period_matrix(omega1(Complex(0, 1)));
  CHECK_THROWS_AS(theta(zvec2(Complex(0, 0), Complex(0, 0)), p1), InputError);
  CHECK_THROWS_AS(theta(zvec(Complex(0, 0)), p1, -1.0), InputError);
  const RVector zero = RVector::Zero(1);
  const IVector none = IVector::Zero(1);
  CHECK_THROWS_AS(
      theta_shifted_sum(zvec(Complex(0, 0)), p1, zero, zero, none, 1e-10, -2),
      InputError);
}
