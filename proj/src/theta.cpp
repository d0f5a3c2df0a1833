#include "taukit/theta.hpp"

#include <cmath>
#include <string>

namespace taukit {

namespace {

// Smallest box radius rho with
//   pi lambda_min rho^2 >= pi q + log((2 rho + 3)^g (2 pi (rho + 2))^{|a|} / tol),
// where q = Im(z)^T Y Im(z) locates the Gaussian peak height.  The left side
// is the shell decay, the right side a union bound over the outside shells
// including the polynomial derivative factor.
int truncation_radius(const PeriodMatrix& pm, const RVector& im_z,
                      int deriv_order, Real tol) {
  const Real q = im_z.dot(pm.y * im_z);
  Real rho = 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    const Real needed =
        kPi * q +
        std::log(std::pow(2.0 * rho + 3.0, pm.g) *
                 std::pow(kTwoPi * (rho + 2.0), deriv_order) / tol);
    const Real next = std::sqrt(std::max(needed, 1.0) / (kPi * pm.lambda_min));
    if (std::abs(next - rho) < 1e-9) {
      rho = next;
      break;
    }
    rho = next;
  }
  return static_cast<int>(std::ceil(rho)) + 1;
}

}  // namespace

PeriodMatrix make_period_matrix(const CMatrix& omega) {
  if (omega.rows() < 1 || omega.rows() != omega.cols()) {
    throw InputError("period matrix must be square and nonempty");
  }
  for (Eigen::Index a = 0; a < omega.rows(); ++a) {
    for (Eigen::Index b = 0; b < omega.cols(); ++b) {
      if (!std::isfinite(omega(a, b).real()) ||
          !std::isfinite(omega(a, b).imag())) {
        throw InputError("period matrix entries must be finite");
      }
    }
  }
  const Real defect =
      (omega - CMatrix(omega.transpose())).cwiseAbs().maxCoeff();
  if (defect > 1e-14) {
    throw InputError("period matrix must be symmetric (defect " +
                     std::to_string(defect) + ")");
  }

  PeriodMatrix pm;
  pm.g = static_cast<int>(omega.rows());
  pm.omega = omega;
  pm.im = omega.imag();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(
      0.5 * (pm.im + RMatrix(pm.im.transpose())));
  pm.lambda_min = eig.eigenvalues().minCoeff();
  if (pm.lambda_min < 1e-8) {
    throw DegenerateImOmega(
        "imaginary part of the period matrix must be positive definite "
        "(smallest eigenvalue " +
        std::to_string(pm.lambda_min) + ")");
  }
  pm.y = pm.im.inverse();
  return pm;
}

int theta_box_radius(const CVector& z, const PeriodMatrix& pm, int deriv_order,
                     Real tol) {
  if (z.size() != pm.g) throw InputError("theta: argument length must equal genus");
  if (deriv_order < 0 || deriv_order > 3)
    throw InputError("theta: total derivative order must be <= 3");
  if (!(tol > 0.0)) throw InputError("theta: tol must be positive");
  RVector im_z(pm.g);
  for (int j = 0; j < pm.g; ++j) im_z(j) = z(j).imag();
  return truncation_radius(pm, im_z, deriv_order, tol);
}

Complex theta_shifted_sum(const CVector& z, const PeriodMatrix& pm,
                          const RVector& xi_a, const RVector& xi_b,
                          const IVector& alpha, Real tol, int extra_radius) {
  const int g = pm.g;
  if (z.size() != g) throw InputError("theta: argument length must equal genus");
  if (xi_a.size() != g || xi_b.size() != g) {
    throw InputError("theta: characteristic length must equal genus");
  }
  if (alpha.size() != g) {
    throw InputError("theta: derivative multi-index length must equal genus");
  }
  int total_order = 0;
  for (int j = 0; j < g; ++j) {
    if (alpha(j) < 0) throw InputError("theta: derivative orders must be >= 0");
    total_order += alpha(j);
  }
  if (total_order > 3) {
    throw InputError("theta: total derivative order must be <= 3");
  }
  if (!(tol > 0.0)) throw InputError("theta: tol must be positive");

  if (extra_radius < 0) throw InputError("theta: extra_radius must be >= 0");

  RVector im_z(g);
  for (int j = 0; j < g; ++j) im_z(j) = z(j).imag();
  const int radius =
      truncation_radius(pm, im_z, total_order, tol) + extra_radius;

  const RVector peak = -(pm.y * im_z) - xi_a;
  IVector center(g);
  for (int j = 0; j < g; ++j) {
    center(j) = static_cast<int>(std::lround(peak(j)));
  }

  CVector shifted_z(g);
  for (int j = 0; j < g; ++j) shifted_z(j) = z(j) + xi_b(j);

  KahanSum<Complex> sum;
  RVector m(g);
  IVector idx = IVector::Constant(g, -radius);
  while (true) {
    for (int j = 0; j < g; ++j) m(j) = center(j) + idx(j) + xi_a(j);

    Complex quad = 0.0;
    Complex lin = 0.0;
    for (int a = 0; a < g; ++a) {
      Complex row = 0.0;
      for (int b = 0; b < g; ++b) row += pm.omega(a, b) * m(b);
      quad += m(a) * row;
      lin += m(a) * shifted_z(a);
    }
    Complex term = std::exp(kI * kPi * (quad + 2.0 * lin));
    for (int j = 0; j < g; ++j) {
      const Complex factor = kTwoPi * kI * m(j);
      for (int p = 0; p < alpha(j); ++p) term *= factor;
    }
    sum.add(term);

    int j = g - 1;
    while (j >= 0) {
      if (idx(j) < radius) {
        ++idx(j);
        break;
      }
      idx(j) = -radius;
      --j;
    }
    if (j < 0) break;
  }
  return sum.value();
}

Complex theta(const CVector& z, const PeriodMatrix& pm, Real tol) {
  return theta_shifted_sum(z, pm, RVector::Zero(pm.g), RVector::Zero(pm.g),
                           IVector::Zero(pm.g), tol);
}

Complex theta_char(const Characteristics& xi, const CVector& z,
                   const PeriodMatrix& pm, Real tol) {
  const int g = pm.g;
  if (xi.xi_a.size() != g || xi.xi_b.size() != g) {
    throw InputError("theta_char: characteristic length must equal genus");
  }

  Complex quad = 0.0;
  Complex lin = 0.0;
  CVector arg(g);
  for (int a = 0; a < g; ++a) {
    Complex row = 0.0;
    for (int b = 0; b < g; ++b) row += pm.omega(a, b) * xi.xi_a(b);
    quad += xi.xi_a(a) * row;
    lin += xi.xi_a(a) * (z(a) + xi.xi_b(a));
    arg(a) = z(a) + row + xi.xi_b(a);
  }
  const Complex prefactor = std::exp(kI * kPi * (quad + 2.0 * lin));
  const Real inner_tol = tol / std::max(1.0, 2.0 * std::abs(prefactor));
  const Complex by_prefactor = prefactor * theta(arg, pm, inner_tol);
  const Complex by_shift =
      theta_shifted_sum(z, pm, xi.xi_a, xi.xi_b, IVector::Zero(g), tol);
  // Roundoff scales with the value; keep the agreement gate absolute for
  // order-one values and relative above that.
  const Real gate = 10.0 * tol * std::max(1.0, std::abs(by_prefactor));
  if (std::abs(by_prefactor - by_shift) > gate) {
    throw NumericsError(
        "theta_char: prefactor and shifted-sum routes disagree by " +
        std::to_string(std::abs(by_prefactor - by_shift)));
  }
  return by_prefactor;
}

Complex theta_deriv(const CVector& z, const PeriodMatrix& pm,
                    const IVector& alpha, Real tol) {
  return theta_shifted_sum(z, pm, RVector::Zero(pm.g), RVector::Zero(pm.g),
                           alpha, tol);
}

ModularReport modular_check(const CVector& z, const PeriodMatrix& pm,
                            Real tol) {
  CMatrix om_inv = pm.omega.inverse();
  const Real defect =
      (om_inv - CMatrix(om_inv.transpose())).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw NumericsError("modular_check: inverse period matrix lost symmetry");
  }
  om_inv = 0.5 * (om_inv + CMatrix(om_inv.transpose()));
  const PeriodMatrix transformed = make_period_matrix(-om_inv);

  ModularReport report;
  report.lhs = theta(CVector(-(om_inv * z)), transformed, tol);

  // Plain bilinear pairing z^T Omega^{-1} z (no conjugation).
  const Complex bilinear = (z.transpose() * (om_inv * z))(0, 0);
  const Complex det_scale = std::sqrt(Complex((pm.omega / kI).determinant()));
  report.rhs = det_scale * std::exp(kI * kPi * bilinear) * theta(z, pm, tol);
  report.residual = std::min(std::abs(report.lhs - report.rhs),
                             std::abs(report.lhs + report.rhs));
  return report;
}

}  // namespace taukit
