#pragma once

#include "taukit/errors.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Symmetric complex matrix with positive definite imaginary part, plus the
// derived data every lattice sum needs.
struct PeriodMatrix {
  int g = 0;
  CMatrix omega;
  RMatrix im;             // Im(omega)
  RMatrix y;              // inverse of Im(omega)
  Real lambda_min = 0.0;  // smallest eigenvalue of Im(omega)
};

// InputError on asymmetry (tolerance 1e-14) or shape; DegenerateImOmega when
// the smallest eigenvalue of Im(omega) is below 1e-8.
PeriodMatrix make_period_matrix(const CMatrix& omega);

struct Characteristics {
  RVector xi_a;
  RVector xi_b;
};

// The one lattice-sum engine behind every entry point:
//   sum over n in Z^g of  prod_j (2 pi i (n_j + xi_a_j))^{alpha_j}
//     * exp(i pi ((n+xi_a)^T Omega (n+xi_a) + 2 (n+xi_a)^T (z + xi_b))).
// Truncation: box centered at the rounded Gaussian peak with radius from the
// tail bound at absolute error tol.  Deterministic lexicographic order with
// compensated accumulation.  extra_radius widens the box beyond the bound
// (soundness checks double it and compare).
Complex theta_shifted_sum(const CVector& z, const PeriodMatrix& pm,
                          const RVector& xi_a, const RVector& xi_b,
                          const IVector& alpha, Real tol, int extra_radius = 0);

// Box radius the engine would use for these inputs (soundness checks ask,
// then rerun with extra_radius equal to it).
int theta_box_radius(const CVector& z, const PeriodMatrix& pm, int deriv_order,
                     Real tol);

Complex theta(const CVector& z, const PeriodMatrix& pm, Real tol = 1e-12);

// Prefactor route exp(i pi (xi_a^T Omega xi_a + 2 xi_a^T (z + xi_b)))
// * theta(z + Omega xi_a + xi_b); cross-checked against the shifted lattice
// sum to 10*tol, scaled by the value magnitude when that exceeds one
// (NumericsError on disagreement).
Complex theta_char(const Characteristics& xi, const CVector& z,
                   const PeriodMatrix& pm, Real tol = 1e-12);

// Term-wise derivative of the series, multi-index alpha with |alpha| <= 3.
Complex theta_deriv(const CVector& z, const PeriodMatrix& pm,
                    const IVector& alpha, Real tol = 1e-12);

struct ModularReport {
  Complex lhs{};
  Complex rhs{};
  Real residual = 0.0;  // min over the square-root branch sign
};

// theta(-Omega^{-1} z | -Omega^{-1}) against
// sqrt(det(Omega/i)) * exp(i pi z^T Omega^{-1} z) * theta(z | Omega).
ModularReport modular_check(const CVector& z, const PeriodMatrix& pm,
                            Real tol = 1e-12);

}  // namespace taukit
