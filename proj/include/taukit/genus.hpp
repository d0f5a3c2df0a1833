#pragma once

#include <vector>

#include "taukit/theta.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Lattice-sum input: period data, real characteristics, and the distinguished
// point z = Omega xi_a + xi_b they determine.
struct InstantonInput {
  PeriodMatrix pm;
  Characteristics xi;
  CVector z;
};

InstantonInput make_instanton_input(const CMatrix& omega,
                                    const Characteristics& xi);
// Splits z into characteristics: xi_a = Y Im(z), xi_b = Re(z) - Re(Omega) xi_a.
InstantonInput instanton_input_from_z(const CMatrix& omega, const CVector& z);

// Upper bound on the neglected tail of the window-limited lattice sums.
Real instanton_tail_bound(const InstantonInput& input, int window);
// Smallest window whose tail bound is below tol; WindowTooSmall if none <= 60.
int recommended_window(const InstantonInput& input, Real tol = 1e-8);

// Direct sum over integer period pairs (l, m) in [-window, window]^{2g}:
// terms exp(-pi/2 <lam,lam> - 2 pi i Im<z,lam> - i pi (l.m)), lam = -Omega l + m,
// with the Hermitian pairing <u,v> = sum Y^{jk} u_j conj(v_k).
Complex zinst_primitive(const InstantonInput& input, int window,
                        Real tol = 1e-8);
// Same sum arranged as exp(-pi/2 n^T Q n - pi A^T n) over n in Z^{2g}.
Complex zinst_qa(const InstantonInput& input, int window, Real tol = 1e-8);

// The 2g x 2g quadratic form Q of zinst_qa and the closed form of its inverse
// (i/2) [[Omega^{-1}, I], [I, conj(Omega)]].
CMatrix instanton_form_matrix(const InstantonInput& input);
CMatrix instanton_form_inverse(const InstantonInput& input);

// Poisson-resummed value, evaluated both as
//   2^{g/2}/sqrt(det Y) exp(-2 pi Im(z)^T Y Im(z)) |theta(z)|^2
// and as 2^{g/2}/sqrt(det Y) |theta_char(xi, 0)|^2; the two must agree to
// 10*tol (NumericsError); returns the characteristic form.
Real zinst_closed(const InstantonInput& input, Real tol = 1e-10);

struct BoldTau {
  Real value = 0.0;
  Real log_value = 0.0;
};
// Same closed form with an OnThetaDivisor gate (|theta_char| < 1e-12).
BoldTau bold_tau(const InstantonInput& input, Real tol = 1e-10);

// log of the closed form as a function of z at fixed Omega; the quantity the
// first- and second-derivative identities differentiate.
Real log_partition_of_z(const PeriodMatrix& pm, const CVector& z, Real tol);

struct GenusWardFirst {
  Complex fd{};          // Wirtinger central difference of the log partition
  Complex analytic{};    // pi [Y (z - conj z)]_i + theta_i / theta
  Complex char_route{};  // shifted-sum log-derivative at the origin
  Real max_residual = 0.0;
};
GenusWardFirst ward_genus_first(const InstantonInput& input, int i,
                                Real fd_step = 1e-4, Real tol = 1e-14);

struct GenusWardSecond {
  Complex holo_fd{};
  Complex holo_analytic{};  // pi Y_ij + d^2 log theta
  Real holo_residual = 0.0;
  Complex mixed_fd{};
  Real y_ij = 0.0;
  Real magnitude_residual = 0.0;  // | |mixed_fd| - pi |Y_ij| |
  int mixed_sign = 0;             // sign of Re(mixed_fd)
};
GenusWardSecond ward_genus_second(const InstantonInput& input, int i, int j,
                                  Real fd_step = 1e-3, Real tol = 1e-14);

// Derivative tensor of log |theta(u)|^2 at u = 0: holo_count holomorphic and
// anti_count anti-holomorphic indices.  Entries with both counts positive
// vanish identically (the split log theta(u) + conj(log theta(u)) has no
// mixed terms); pure entries come from log-derivative expansions of the
// lattice sums.
struct CorrTensor {
  int g = 0;
  int holo_count = 0;
  int anti_count = 0;
  std::vector<Complex> values;  // row-major, holo indices first
  Complex entry(const std::vector<int>& indices) const;
};
CorrTensor corr_tensor(const PeriodMatrix& pm, int m, int n, Real tol = 1e-12);

// Green function of the flat torus C/(Z + tau Z):
//   G(z) = -(1/pi) log |theta_half(z|tau)|^2 + (2/Im tau) Im(z)^2 + c,
// with theta_half the half-integer characteristic series and c fixed by a
// zero-mean midpoint grid over the fundamental domain.
struct TorusGreen {
  Complex tau{};
  Real c = 0.0;
  int grid_n = 0;
};
TorusGreen make_torus_green(Complex tau, int grid_n = 64, Real tol = 1e-12);
Real torus_green_eval(const TorusGreen& green, Complex z);
Real torus_green(Complex z, Complex tau);  // convenience, grid 64

// -1/4 (Dxx + Dyy) of the Green function; limits to -1/Im tau off the source.
Real torus_mixed_laplacian(const TorusGreen& green, Complex z,
                           Real fd_step = 1e-3);

struct FayReport {
  Complex b_theta{};   // -(log theta_half)'' at z - w via lattice sums
  Complex b_green{};   // pi * FD d^2/du^2 G + pi / Im tau
  Real residual = 0.0;
  Real a_period = 0.0;  // |mean of b_theta over a closed horizontal loop|
};
FayReport fay_torus_check(Complex tau, Complex z, Complex w,
                          int period_samples = 256, Real fd_step = 1e-3);

}  // namespace taukit
