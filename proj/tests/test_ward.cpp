#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "taukit/exterior_map.hpp"
#include "taukit/tau.hpp"
#include "taukit/ward.hpp"

using namespace taukit;

namespace {

ExteriorMap three_coeff(Real r = 1.0) {
  ExteriorMap m;
  m.r = r;
  m.b0 = Complex(0.05, 0.02);
  m.coeffs = CVector::Zero(3);
  m.coeffs(0) = 0.15;
  m.coeffs(1) = Complex(0.08, 0.05);
  m.coeffs(2) = 0.04;
  return m;
}

ExteriorMap ellipse() {
  ExteriorMap m;
  m.coeffs = CVector::Zero(1);
  m.coeffs(0) = 0.3;
  return m;
}

// log tau as a function of the moment coordinates, each point re-solved
Real logtau_of_moments(const MomentSet& target, const ExteriorMap& seed) {
  return log_tau_boundary(map_from_moments(target, seed), 4096).log_tau;
}

}  // namespace

TEST_CASE("first-order identity: gradient of log tau is the interior moments") {
  const WardFirstOrderReport rep = ward_first_order(three_coeff(), 4);
  CHECK(rep.max_residual < 1e-4);
  CHECK(std::abs(rep.v0_fd - rep.v0) < 1e-4);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(rep.fd(n) - rep.vn(n)) < 1e-4);
  }
}

TEST_CASE("chain rule along a one-parameter family") {
  auto family = [](Real s) {
    ExteriorMap m;
    m.coeffs = CVector::Zero(1);
    m.coeffs(0) = 0.2 + s;
    return m;
  };
  const ChainRuleReport rep = ward_chain_rule(family, 0.1);
  CHECK(rep.residual < 1e-6);
  CHECK(std::abs(rep.lhs - rep.rhs) < 1e-6);
}

TEST_CASE("second derivative in t0 is twice the log of the conformal radius") {
  const ExteriorMap m = three_coeff(1.2);
  const HessianBlock block = hessian_block_fd(m, 2);
  CHECK(std::abs(block.t0t0 - 2.0 * std::log(1.2)) < 1e-4);

  // independent route: plain second difference of log tau itself
  const MomentSet base = exterior_moments(m, m.order() + 1, 4096);
  const Real h = 1e-3;
  MomentSet up = base, dn = base;
  up.t0 += h;
  dn.t0 -= h;
  const Real direct = (logtau_of_moments(up, m) - 2.0 * logtau_of_moments(base, m) +
                       logtau_of_moments(dn, m)) /
                      (h * h);
  CHECK(std::abs(direct - 2.0 * std::log(1.2)) < 1e-4);
}

TEST_CASE("FD Hessian block structure") {
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 4);
  CHECK(block.order == 4);
  CHECK(block.richardson_gap < 1e-3);
  Real sym = 0.0, herm = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      sym = std::max(sym, std::abs(block.holo(a, b) - block.holo(b, a)));
      herm = std::max(herm,
                      std::abs(block.mixed(a, b) - std::conj(block.mixed(b, a))));
    }
  }
  CHECK(sym < 1e-4);
  CHECK(herm < 1e-4);
}

TEST_CASE("one Hessian entry against a raw double difference of log tau") {
  // d^2 log tau / dt0 dt1 by a Wirtinger stencil in t1 after a t0 shift;
  // everything below re-solves the map, so this path shares nothing with
  // hessian_block_fd's differenced analytic gradient
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 2);
  const MomentSet base = exterior_moments(m, m.order() + 1, 4096);
  const Real h = 1e-3;
  auto dt0 = [&](const MomentSet& at) {
    MomentSet up = at, dn = at;
    up.t0 += h;
    dn.t0 -= h;
    return (logtau_of_moments(up, m) - logtau_of_moments(dn, m)) / (2.0 * h);
  };
  MomentSet xp = base, xm = base, yp = base, ym = base;
  xp.t(0) += h;
  xm.t(0) -= h;
  yp.t(0) += Complex(0, h);
  ym.t(0) -= Complex(0, h);
  const Complex direct = 0.5 * ((dt0(xp) - dt0(xm)) / (2.0 * h) -
                                kI * (dt0(yp) - dt0(ym)) / (2.0 * h));
  CHECK(std::abs(direct - block.t0_row(0)) < 1e-4);
}

TEST_CASE("holomorphic block against the symmetric-kernel quadrature") {
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 3);
  const CMatrix quad = schiffer_hessian_block(m, 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(std::abs(block.holo(a, b) - quad(a, b)) < 1e-4);
      CHECK(std::abs(quad(a, b) - quad(b, a)) < 1e-10);
    }
  }
}

TEST_CASE("mixed block against the reproducing-kernel quadrature") {
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 3);
  const CMatrix quad = bergman_hessian_block(m, 3, 1.5);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(std::abs(block.mixed(a, b) - quad(a, b)) < 1e-4);
      CHECK(std::abs(quad(a, b) - std::conj(quad(b, a))) < 1e-10);
    }
  }
  // the quadrature lives on |w| = rho but the value cannot depend on rho
  const CMatrix lo = bergman_hessian_block(m, 3, 1.3);
  const CMatrix hi = bergman_hessian_block(m, 3, 2.0);
  Real spread = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      spread = std::max(spread, std::abs(lo(a, b) - hi(a, b)));
    }
  }
  CHECK(spread < 1e-8);
}

TEST_CASE("single-entry comparison helpers") {
  const ExteriorMap m = ellipse();
  const EntryComparison sch = hessian_vs_schiffer(m, 1, 2);
  CHECK(sch.residual < 1e-4);
  const EntryComparison ber = hessian_vs_bergman(m, 2, 2);
  CHECK(ber.residual < 1e-4);
  CHECK(ber.rho_spread < 1e-8);
}

TEST_CASE("metric gram is Hermitian positive definite") {
  const MetricGram mg = metric_gram(three_coeff(), 4, 1.5);
  CHECK(mg.order == 4);
  CHECK(mg.hermitian_defect < 1e-10);
  CHECK(mg.min_eigenvalue > 0.0);
  // and equals the mixed Hessian block
  const HessianBlock block = hessian_block_fd(three_coeff(), 4);
  Real worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      worst = std::max(worst, std::abs(mg.h(a, b) - block.mixed(a, b)));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("equilibrium moments: normalization and series") {
  const ExteriorMap m = three_coeff();
  const CVector eq = equilibrium_moments(m, 4);
  CHECK(std::abs(eq(0) - Complex(1, 0)) < 1e-12);
  // the quadrature route must reproduce the exact product coefficients
  for (int n = 1; n <= 4; ++n) {
    CHECK(std::abs(eq(n) - laurent_constant_term(m, n)) < 1e-10);
  }
}

TEST_CASE("equilibrium moments generate the t0 row of the Hessian") {
  const ExteriorMap m = three_coeff();
  const CVector eq = equilibrium_moments(m, 4);
  const HessianBlock block = hessian_block_fd(m, 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(std::abs(eq(n) - block.t0_row(n - 1)) < 1e-4);
  }
}

TEST_CASE("series reconstruction of log G") {
  const ExteriorMap m = ellipse();
  const ReconstructionReport rep = reconstruct_logG(m, 8, Complex(5, 0));
  CHECK(rep.residual < 1e-4);
  CHECK(std::abs(rep.reconstructed - rep.direct) < 1e-4);
  // an impossible tail tolerance must refuse rather than return garbage
  CHECK_THROWS_AS(reconstruct_logG(m, 8, Complex(5, 0), 1e-4, 4096, 1e-30),
                  TailTooLarge);
}

TEST_CASE("integrated identities at and off the diagonal") {
  const ExteriorMap m = three_coeff();
  const IntegratedIdentityReport diag =
      integrated_identities(m, Complex(6, 0), Complex(6, 0), 10);
  CHECK(diag.residual_holo < 1e-5);
  CHECK(diag.residual_mixed < 1e-5);

  const IntegratedIdentityReport off =
      integrated_identities(m, Complex(6, 0), Complex(4, 2), 10);
  CHECK(off.residual_holo < 1e-5);
  CHECK(off.residual_mixed < 1e-5);
  // both closed forms are symmetric under swapping the points
  const IntegratedIdentityReport swapped =
      integrated_identities(m, Complex(4, 2), Complex(6, 0), 10);
  CHECK(std::abs(off.rhs_holo - swapped.rhs_holo) < 1e-12);
  CHECK(std::abs(off.lhs_holo - swapped.lhs_holo) < 1e-12);
}
