#pragma once

#include <functional>

#include "taukit/exterior_map.hpp"
#include "taukit/moments.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Second derivatives of log tau in moment coordinates, assembled from
// central differences of the analytic gradient (the interior moments) with
// each perturbed moment set re-solved back to a map.
struct HessianBlock {
  int order = 0;            // K: blocks cover indices 1..K
  CMatrix holo;             // d2 log tau / dt_m dt_n
  CMatrix mixed;            // d2 log tau / dt_m d conj(t_n)
  CVector t0_row;           // d2 log tau / dt_0 dt_n, n = 1..K
  Real t0t0 = 0.0;          // d2 log tau / dt_0^2
  Real richardson_gap = 0;  // max relative change when the step is doubled
};

struct WardFirstOrderReport {
  Real v0_fd = 0.0, v0 = 0.0;
  CVector fd;  // FD d log tau / dt_n, n = 1..N
  CVector vn;  // interior moments v_n
  Real max_residual = 0.0;
};

// d log tau / dt_n compared against v_n for n = 0..N (central differences in
// moment coordinates, map re-solved at each perturbed point).
WardFirstOrderReport ward_first_order(const ExteriorMap& map, int N,
                                      Real fd_step = 1e-4, int M = 4096,
                                      Real solve_tol = 1e-12);

struct ChainRuleReport {
  Real lhs = 0.0;  // d log tau / ds
  Real rhs = 0.0;  // v0 t0' + sum 2 Re(v_n t_n')
  Real residual = 0.0;
};

// One-parameter family s -> map; all pieces by central differences at s0.
ChainRuleReport ward_chain_rule(const std::function<ExteriorMap(Real)>& family,
                                Real s0, Real fd_step = 1e-4, int M = 4096);

HessianBlock hessian_block_fd(const ExteriorMap& map, int K, Real fd_step = 1e-4,
                              int M = 4096, Real solve_tol = 1e-12);

// Double-quadrature Hessian blocks (indices 1..K).
// Holomorphic block: circle-kernel minus plane-kernel on two offset copies of
// the boundary.  Mixed block: reproducing-kernel integral over the image of
// |w| = rho (without the 1/pi kernel normalization; this is the convention
// the mixed Hessian satisfies).
CMatrix schiffer_hessian_block(const ExteriorMap& map, int K, int M = 4096);
CMatrix bergman_hessian_block(const ExteriorMap& map, int K, Real rho = 1.5,
                              int M = 4096);

struct EntryComparison {
  Complex fd{};
  Complex quad{};
  Real residual = 0.0;
  Real rho_spread = 0.0;  // mixed only: max entry change across rho in {1.3, 1.5, 2}
};

EntryComparison hessian_vs_schiffer(const ExteriorMap& map, int m, int n,
                                    Real fd_step = 1e-4, int M = 4096);
EntryComparison hessian_vs_bergman(const ExteriorMap& map, int m, int n,
                                   Real rho = 1.5, Real fd_step = 1e-4,
                                   int M = 4096);

struct MetricGram {
  int order = 0;
  CMatrix h;
  Real min_eigenvalue = 0.0;
  Real hermitian_defect = 0.0;
};

// Gram matrix of the moment coordinate fields in the exterior-domain
// reproducing-kernel pairing; positive definite, equal to the mixed Hessian.
MetricGram metric_gram(const ExteriorMap& map, int N, Real rho = 1.5, int M = 4096);

// Laurent coefficients M_0..M_N of G'/G at infinity via a circle quadrature
// outside the contour; M_0 = 1.
CVector equilibrium_moments(const ExteriorMap& map, int N, int M = 4096);

struct ReconstructionReport {
  Complex reconstructed{};  // log z - t0t0/2 - sum z^{-n}/n * t0_row[n]
  Complex direct{};         // log eval_G(z)
  Real residual = 0.0;
  Real last_term = 0.0;
};

// Rebuilds log G(z) from the t0 row of the FD Hessian; TailTooLarge when the
// K-th term exceeds tail_tol.
ReconstructionReport reconstruct_logG(const ExteriorMap& map, int K, Complex z,
                                      Real fd_step = 1e-4, int M = 4096,
                                      Real tail_tol = 1e-4);

struct IntegratedIdentityReport {
  Complex lhs_holo{}, rhs_holo{};
  Complex lhs_mixed{}, rhs_mixed{};
  Real residual_holo = 0.0;
  Real residual_mixed = 0.0;
};

// Series forms of the quadrature Hessians against the closed expressions
// log((G(z)-G(w))/(z-w)) and log(G(z)conj(G(w))/(G(z)conj(G(w)) - 1)).
// z == w uses the diagonal limit log G'(z) for the first expression.
IntegratedIdentityReport integrated_identities(const ExteriorMap& map, Complex z,
                                               Complex w, int K, int M = 4096,
                                               Real rho = 1.5,
                                               Real tail_tol = 1e-4);

}  // namespace taukit
