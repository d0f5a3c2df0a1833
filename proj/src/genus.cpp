#include "taukit/genus.hpp"

#include <cmath>
#include <string>

#include "taukit/errors.hpp"

namespace taukit {

namespace {

void validate_characteristics(const PeriodMatrix& pm,
                              const Characteristics& xi) {
  if (xi.xi_a.size() != pm.g || xi.xi_b.size() != pm.g) {
    throw InputError("characteristic length must equal genus");
  }
  for (int j = 0; j < pm.g; ++j) {
    if (!std::isfinite(xi.xi_a(j)) || !std::isfinite(xi.xi_b(j))) {
      throw InputError("characteristic entries must be finite");
    }
  }
}

RVector imag_part(const CVector& z) {
  RVector out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) out(j) = z(j).imag();
  return out;
}

// Hermitian pairing <u, v> = sum_jk Y_jk u_j conj(v_k).
Complex pairing(const RMatrix& y, const CVector& u, const CVector& v) {
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    Complex row = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      row += y(j, k) * std::conj(v(k));
    }
    acc += u(j) * row;
  }
  return acc;
}

Real scale_prefactor(const PeriodMatrix& pm) {
  return std::pow(2.0, 0.5 * pm.g) / std::sqrt(pm.y.determinant());
}

// Odometer over [-window, window]^dim in lexicographic order.
template <class Fn>
void for_each_lattice(int dim, int window, Fn&& fn) {
  IVector idx = IVector::Constant(dim, -window);
  while (true) {
    fn(idx);
    int j = dim - 1;
    while (j >= 0) {
      if (idx(j) < window) {
        ++idx(j);
        break;
      }
      idx(j) = -window;
      --j;
    }
    if (j < 0) break;
  }
}

constexpr Real kDivisorFloor = 1e-12;

}  // namespace

InstantonInput make_instanton_input(const CMatrix& omega,
                                    const Characteristics& xi) {
  InstantonInput input;
  input.pm = make_period_matrix(omega);
  validate_characteristics(input.pm, xi);
  input.xi = xi;
  input.z = CVector::Zero(input.pm.g);
  for (int a = 0; a < input.pm.g; ++a) {
    Complex row = 0.0;
    for (int b = 0; b < input.pm.g; ++b) row += omega(a, b) * xi.xi_a(b);
    input.z(a) = row + xi.xi_b(a);
  }
  return input;
}

InstantonInput instanton_input_from_z(const CMatrix& omega, const CVector& z) {
  const PeriodMatrix pm = make_period_matrix(omega);
  if (z.size() != pm.g) {
    throw InputError("instanton input: z length must equal genus");
  }
  Characteristics xi;
  xi.xi_a = pm.y * imag_part(z);
  xi.xi_b = RVector(pm.g);
  for (int a = 0; a < pm.g; ++a) {
    Real re_row = 0.0;
    for (int b = 0; b < pm.g; ++b) re_row += omega(a, b).real() * xi.xi_a(b);
    xi.xi_b(a) = z(a).real() - re_row;
  }
  InstantonInput input = make_instanton_input(omega, xi);
  const Real drift = (input.z - z).cwiseAbs().maxCoeff();
  if (drift > 1e-13 * (1.0 + z.cwiseAbs().maxCoeff())) {
    throw NumericsError(
        "instanton input: characteristic split failed to reproduce z");
  }
  input.z = z;
  return input;
}

Real instanton_tail_bound(const InstantonInput& input, int window) {
  if (window < 0) throw InputError("instanton tail: window must be >= 0");
  const int g = input.pm.g;
  const RMatrix x = input.pm.omega.real();
  const RMatrix b = input.pm.im;
  const RMatrix y = input.pm.y;
  RMatrix p(2 * g, 2 * g);
  p.topLeftCorner(g, g) = x.transpose() * y * x + b;
  p.topRightCorner(g, g) = -(x.transpose() * y);
  p.bottomLeftCorner(g, g) = -(y * x);
  p.bottomRightCorner(g, g) = y;
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(0.5 * (p + RMatrix(p.transpose())));
  const Real lambda = eig.eigenvalues().minCoeff();

  KahanSum<Real> tail;
  for (int s = window + 1; s <= window + 400; ++s) {
    const Real shell = std::pow(2.0 * s + 1.0, 2 * g) -
                       std::pow(2.0 * s - 1.0, 2 * g);
    const Real term = shell * std::exp(-0.5 * kPi * lambda * s * s);
    tail.add(term);
    if (term < 1e-300) break;
  }
  return tail.value();
}

int recommended_window(const InstantonInput& input, Real tol) {
  if (!(tol > 0.0)) throw InputError("recommended_window: tol must be positive");
  for (int w = 1; w <= 60; ++w) {
    if (instanton_tail_bound(input, w) <= tol) return w;
  }
  throw WindowTooSmall(
      "recommended_window: no window up to 60 meets the tolerance; the "
      "quadratic form is too flat");
}

Complex zinst_primitive(const InstantonInput& input, int window, Real tol) {
  if (window < 1) throw InputError("zinst_primitive: window must be >= 1");
  const Real tail = instanton_tail_bound(input, window);
  if (tail > tol) {
    throw WindowTooSmall("zinst_primitive: tail estimate " +
                         std::to_string(tail) + " exceeds the tolerance");
  }
  const int g = input.pm.g;
  KahanSum<Complex> sum;
  CVector lam(g);
  for_each_lattice(2 * g, window, [&](const IVector& idx) {
    for (int a = 0; a < g; ++a) {
      Complex row = 0.0;
      for (int c = 0; c < g; ++c) row += input.pm.omega(a, c) * Real(idx(c));
      lam(a) = -row + Real(idx(g + a));
    }
    const Real quad = pairing(input.pm.y, lam, lam).real();
    const Real phase = -kTwoPi * pairing(input.pm.y, input.z, lam).imag();
    int parity = 0;
    for (int a = 0; a < g; ++a) parity += idx(a) * idx(g + a);
    const Real sign = (parity % 2 + 2) % 2 == 1 ? -1.0 : 1.0;
    sum.add(sign * std::exp(Complex(-0.5 * kPi * quad, phase)));
  });
  return sum.value();
}

CMatrix instanton_form_matrix(const InstantonInput& input) {
  const int g = input.pm.g;
  const CMatrix& om = input.pm.omega;
  const RMatrix& y = input.pm.y;
  CMatrix q(2 * g, 2 * g);
  q.topLeftCorner(g, g) = om.conjugate() * y * om;
  q.topRightCorner(g, g) = -(om * y);
  q.bottomLeftCorner(g, g) = -(y * om);
  q.bottomRightCorner(g, g) = y.cast<Complex>();
  return q;
}

CMatrix instanton_form_inverse(const InstantonInput& input) {
  const int g = input.pm.g;
  CMatrix inv(2 * g, 2 * g);
  inv.topLeftCorner(g, g) = input.pm.omega.inverse();
  inv.topRightCorner(g, g) = CMatrix::Identity(g, g);
  inv.bottomLeftCorner(g, g) = CMatrix::Identity(g, g);
  inv.bottomRightCorner(g, g) = input.pm.omega.conjugate();
  return Complex(0.0, 0.5) * inv;
}

Complex zinst_qa(const InstantonInput& input, int window, Real tol) {
  if (window < 1) throw InputError("zinst_qa: window must be >= 1");
  const Real tail = instanton_tail_bound(input, window);
  if (tail > tol) {
    throw WindowTooSmall("zinst_qa: tail estimate " + std::to_string(tail) +
                         " exceeds the tolerance");
  }
  const int g = input.pm.g;
  const CMatrix q = instanton_form_matrix(input);

  CVector a(2 * g);
  const CVector z_bar = input.z.conjugate();
  for (int j = 0; j < g; ++j) {
    Complex top = 0.0;
    Complex bottom = 0.0;
    for (int k = 0; k < g; ++k) {
      Complex om_y = 0.0;
      Complex om_bar_y = 0.0;
      for (int s = 0; s < g; ++s) {
        om_y += input.pm.omega(j, s) * input.pm.y(s, k);
        om_bar_y += std::conj(input.pm.omega(j, s)) * input.pm.y(s, k);
      }
      top += om_y * z_bar(k) - om_bar_y * input.z(k);
      bottom += input.pm.y(j, k) * (input.z(k) - z_bar(k));
    }
    a(j) = top;
    a(g + j) = bottom;
  }

  KahanSum<Complex> sum;
  for_each_lattice(2 * g, window, [&](const IVector& idx) {
    Complex quad = 0.0;
    Complex lin = 0.0;
    for (int j = 0; j < 2 * g; ++j) {
      Complex row = 0.0;
      for (int k = 0; k < 2 * g; ++k) row += q(j, k) * Real(idx(k));
      quad += Real(idx(j)) * row;
      lin += a(j) * Real(idx(j));
    }
    sum.add(std::exp(-0.5 * kPi * quad - kPi * lin));
  });
  return sum.value();
}

Real zinst_closed(const InstantonInput& input, Real tol) {
  const int g = input.pm.g;
  const Real scale = scale_prefactor(input.pm);
  const RVector im_z = imag_part(input.z);
  const Real bil = im_z.dot(input.pm.y * im_z);
  const Complex th = theta(input.z, input.pm, tol);
  const Real by_z = scale * std::exp(-2.0 * kPi * bil) * std::norm(th);

  const Complex tc = theta_char(input.xi, CVector::Zero(g), input.pm, tol);
  const Real by_char = scale * std::norm(tc);
  if (std::abs(by_z - by_char) > 10.0 * tol * std::max(1.0, by_char)) {
    throw NumericsError("zinst_closed: the two closed forms disagree by " +
                        std::to_string(std::abs(by_z - by_char)));
  }
  return by_char;
}

BoldTau bold_tau(const InstantonInput& input, Real tol) {
  const Complex tc =
      theta_char(input.xi, CVector::Zero(input.pm.g), input.pm, tol);
  if (std::abs(tc) < kDivisorFloor) {
    throw OnThetaDivisor("bold_tau: characteristic theta value vanishes");
  }
  const Real scale = scale_prefactor(input.pm);
  BoldTau result;
  result.value = scale * std::norm(tc);
  result.log_value = 0.5 * input.pm.g * std::log(2.0) -
                     0.5 * std::log(input.pm.y.determinant()) +
                     2.0 * std::log(std::abs(tc));
  return result;
}

Real log_partition_of_z(const PeriodMatrix& pm, const CVector& z, Real tol) {
  const Complex th = theta(z, pm, tol);
  if (std::abs(th) < kDivisorFloor) {
    throw OnThetaDivisor("log_partition_of_z: theta vanishes at z");
  }
  const RVector im_z = imag_part(z);
  const Real bil = im_z.dot(pm.y * im_z);
  return 0.5 * pm.g * std::log(2.0) - 0.5 * std::log(pm.y.determinant()) -
         2.0 * kPi * bil + 2.0 * std::log(std::abs(th));
}

GenusWardFirst ward_genus_first(const InstantonInput& input, int i,
                                Real fd_step, Real tol) {
  const int g = input.pm.g;
  if (i < 0 || i >= g) throw InputError("ward_genus_first: index out of range");
  if (!(fd_step > 0.0)) throw InputError("ward_genus_first: fd_step must be positive");

  const Real h = fd_step;
  auto f = [&](const CVector& zv) {
    return log_partition_of_z(input.pm, zv, tol);
  };
  CVector zp = input.z;
  zp(i) = input.z(i) + h;
  const Real re_plus = f(zp);
  zp(i) = input.z(i) - h;
  const Real re_minus = f(zp);
  zp(i) = input.z(i) + h * kI;
  const Real im_plus = f(zp);
  zp(i) = input.z(i) - h * kI;
  const Real im_minus = f(zp);

  GenusWardFirst report;
  report.fd = 0.5 * (Complex((re_plus - re_minus) / (2.0 * h)) -
                     kI * Complex((im_plus - im_minus) / (2.0 * h)));

  const Complex th = theta(input.z, input.pm, tol);
  if (std::abs(th) < kDivisorFloor) {
    throw OnThetaDivisor("ward_genus_first: theta vanishes at z");
  }
  IVector alpha = IVector::Zero(g);
  alpha(i) = 1;
  const Complex th_i = theta_deriv(input.z, input.pm, alpha, tol);
  Complex drift = 0.0;
  for (int j = 0; j < g; ++j) {
    drift += input.pm.y(i, j) * (input.z(j) - std::conj(input.z(j)));
  }
  report.analytic = kPi * drift + th_i / th;

  const Complex den = theta_shifted_sum(CVector::Zero(g), input.pm,
                                        input.xi.xi_a, input.xi.xi_b,
                                        IVector::Zero(g), tol);
  if (std::abs(den) < kDivisorFloor) {
    throw OnThetaDivisor("ward_genus_first: characteristic theta vanishes");
  }
  const Complex num = theta_shifted_sum(CVector::Zero(g), input.pm,
                                        input.xi.xi_a, input.xi.xi_b, alpha,
                                        tol);
  report.char_route = num / den;

  report.max_residual = std::max({std::abs(report.fd - report.analytic),
                                  std::abs(report.fd - report.char_route),
                                  std::abs(report.analytic - report.char_route)});
  return report;
}

GenusWardSecond ward_genus_second(const InstantonInput& input, int i, int j,
                                  Real fd_step, Real tol) {
  const int g = input.pm.g;
  if (i < 0 || i >= g || j < 0 || j >= g) {
    throw InputError("ward_genus_second: index out of range");
  }
  // Second differences sit on a ~1e-15/h^2 noise floor; keep the step at or
  // above 1e-3 regardless of the requested first-order step.
  const Real h = std::max(fd_step, 1e-3);

  auto f = [&](const CVector& zv) {
    return log_partition_of_z(input.pm, zv, tol);
  };
  const Real f0 = f(input.z);
  // Directions are (index, component): component 0 shifts the real part,
  // component 1 the imaginary part.
  auto shift = [&](int idx, int comp, Real amount) {
    CVector zv = input.z;
    zv(idx) += comp == 0 ? Complex(amount, 0.0) : Complex(0.0, amount);
    return zv;
  };
  auto cross_at = [&](int ia, int ca, int ib, int cb, Real step) {
    if (ia == ib && ca == cb) {
      return (f(shift(ia, ca, step)) - 2.0 * f0 + f(shift(ia, ca, -step))) /
             (step * step);
    }
    auto shift2 = [&](Real da, Real db) {
      CVector zv = shift(ia, ca, da);
      zv(ib) += cb == 0 ? Complex(db, 0.0) : Complex(0.0, db);
      return zv;
    };
    return (f(shift2(step, step)) - f(shift2(step, -step)) -
            f(shift2(-step, step)) + f(shift2(-step, -step))) /
           (4.0 * step * step);
  };
  // Richardson step doubling: the plain h^2 truncation term (~|f''''| h^2/12,
  // easily 1e-5 here) would swamp the 1e-6 gates on the mixed block.
  auto cross = [&](int ia, int ca, int ib, int cb) {
    return (4.0 * cross_at(ia, ca, ib, cb, h) -
            cross_at(ia, ca, ib, cb, 2.0 * h)) /
           3.0;
  };

  const Real dxx = cross(i, 0, j, 0);
  const Real dyy = cross(i, 1, j, 1);
  const Real dxy = cross(i, 0, j, 1);
  const Real dyx = cross(i, 1, j, 0);

  GenusWardSecond report;
  report.holo_fd = 0.25 * Complex(dxx - dyy, -(dxy + dyx));
  report.mixed_fd = 0.25 * Complex(dxx + dyy, dxy - dyx);

  const Complex th = theta(input.z, input.pm, tol);
  if (std::abs(th) < kDivisorFloor) {
    throw OnThetaDivisor("ward_genus_second: theta vanishes at z");
  }
  IVector ei = IVector::Zero(g);
  ei(i) = 1;
  IVector ej = IVector::Zero(g);
  ej(j) = 1;
  const Complex th_i = theta_deriv(input.z, input.pm, ei, tol);
  const Complex th_j = theta_deriv(input.z, input.pm, ej, tol);
  IVector eij = ei;
  eij(j) += 1;
  const Complex th_ij = theta_deriv(input.z, input.pm, eij, tol);
  report.holo_analytic =
      kPi * input.pm.y(i, j) + th_ij / th - th_i * th_j / (th * th);
  report.holo_residual = std::abs(report.holo_fd - report.holo_analytic);

  report.y_ij = input.pm.y(i, j);
  report.magnitude_residual =
      std::abs(std::abs(report.mixed_fd) - kPi * std::abs(report.y_ij));
  if (std::abs(report.y_ij) < 1e-12) {
    report.mixed_sign = 0;
  } else {
    report.mixed_sign = report.mixed_fd.real() * report.y_ij < 0.0 ? -1 : 1;
  }
  return report;
}

Complex CorrTensor::entry(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != holo_count + anti_count) {
    throw InputError("corr tensor: index count mismatch");
  }
  std::size_t flat = 0;
  for (int idx : indices) {
    if (idx < 0 || idx >= g) throw InputError("corr tensor: index out of range");
    flat = flat * static_cast<std::size_t>(g) + static_cast<std::size_t>(idx);
  }
  return values[flat];
}

CorrTensor corr_tensor(const PeriodMatrix& pm, int m, int n, Real tol) {
  if (m < 0 || n < 0 || m > 3 || n > 3 || m + n > 4) {
    throw InputError(
        "corr_tensor: counts must satisfy 0 <= m, n <= 3 and m + n <= 4");
  }
  const int g = pm.g;
  const CVector origin = CVector::Zero(g);
  const Complex th0 = theta(origin, pm, tol);
  if (std::abs(th0) < kDivisorFloor) {
    throw OnThetaDivisor("corr_tensor: theta vanishes at the origin");
  }

  CorrTensor tensor;
  tensor.g = g;
  tensor.holo_count = m;
  tensor.anti_count = n;
  std::size_t size = 1;
  for (int k = 0; k < m + n; ++k) size *= static_cast<std::size_t>(g);
  tensor.values.assign(size, Complex(0.0, 0.0));

  if (m > 0 && n > 0) return tensor;  // mixed entries vanish identically

  const int order = m + n;
  if (order == 0) {
    tensor.values[0] = 2.0 * std::log(std::abs(th0));
    return tensor;
  }

  auto deriv = [&](const std::vector<int>& idx) {
    IVector alpha = IVector::Zero(g);
    for (int k : idx) alpha(k) += 1;
    return theta_deriv(origin, pm, alpha, tol);
  };

  // Log-derivative expansions in terms of plain derivatives.
  auto log_deriv = [&](const std::vector<int>& idx) -> Complex {
    if (idx.size() == 1) return deriv(idx) / th0;
    if (idx.size() == 2) {
      return deriv(idx) / th0 -
             deriv({idx[0]}) * deriv({idx[1]}) / (th0 * th0);
    }
    const Complex t1 = deriv({idx[0]});
    const Complex t2 = deriv({idx[1]});
    const Complex t3 = deriv({idx[2]});
    return deriv(idx) / th0 -
           (deriv({idx[0], idx[1]}) * t3 + deriv({idx[0], idx[2]}) * t2 +
            deriv({idx[1], idx[2]}) * t1) /
               (th0 * th0) +
           2.0 * t1 * t2 * t3 / (th0 * th0 * th0);
  };

  std::vector<int> idx(order, 0);
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::size_t rem = flat;
    for (int k = order - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % g);
      rem /= static_cast<std::size_t>(g);
    }
    const Complex value = log_deriv(idx);
    tensor.values[flat] = n == 0 ? value : std::conj(value);
  }
  return tensor;
}

namespace {

PeriodMatrix torus_period(Complex tau) {
  if (!(tau.imag() > 0.0)) {
    throw InputError("torus: Im tau must be positive");
  }
  CMatrix omega(1, 1);
  omega(0, 0) = tau;
  return make_period_matrix(omega);
}

Characteristics half_characteristics() {
  Characteristics xi;
  xi.xi_a = RVector::Constant(1, 0.5);
  xi.xi_b = RVector::Constant(1, 0.5);
  return xi;
}

void require_off_lattice(Complex z, Complex tau, const char* who) {
  const Real t = z.imag() / tau.imag();
  const Real s = z.real() - t * tau.real();
  const Real ds = s - std::round(s);
  const Real dt = t - std::round(t);
  if (std::hypot(ds, dt) < 1e-9) {
    throw LatticePoint(std::string(who) + ": point is on the period lattice");
  }
}

// Green kernel before the zero-mean shift.
Real torus_core(Complex z, Complex tau, const PeriodMatrix& pm,
                const Characteristics& half, Real tol) {
  CVector arg(1);
  arg(0) = z;
  const Complex tc = theta_char(half, arg, pm, tol);
  return -(2.0 / kPi) * std::log(std::abs(tc)) +
         (2.0 / tau.imag()) * z.imag() * z.imag();
}

}  // namespace

TorusGreen make_torus_green(Complex tau, int grid_n, Real tol) {
  if (grid_n < 4) throw InputError("torus: grid_n must be >= 4");
  const PeriodMatrix pm = torus_period(tau);
  const Characteristics half = half_characteristics();

  TorusGreen green;
  green.tau = tau;
  green.grid_n = grid_n;
  KahanSum<Real> mean;
  for (int a = 0; a < grid_n; ++a) {
    const Real s = (a + 0.5) / grid_n;
    for (int b = 0; b < grid_n; ++b) {
      const Real t = (b + 0.5) / grid_n;
      mean.add(torus_core(s + tau * t, tau, pm, half, tol));
    }
  }
  green.c = -mean.value() / (static_cast<Real>(grid_n) * grid_n);
  return green;
}

Real torus_green_eval(const TorusGreen& green, Complex z) {
  require_off_lattice(z, green.tau, "torus_green");
  const PeriodMatrix pm = torus_period(green.tau);
  return torus_core(z, green.tau, pm, half_characteristics(), 1e-13) + green.c;
}

Real torus_green(Complex z, Complex tau) {
  return torus_green_eval(make_torus_green(tau), z);
}

Real torus_mixed_laplacian(const TorusGreen& green, Complex z, Real fd_step) {
  // Step floor keeps the eval noise (~1e-13) under the h^2 divisor; the
  // Richardson combination removes the h^2 truncation bias, which alone can
  // reach the 1e-4 gate near lattice-adjacent curvature.
  const Real h = std::max(fd_step, 1e-3);
  const Real f0 = torus_green_eval(green, z);
  auto lap_at = [&](Real step) {
    const Real dxx = (torus_green_eval(green, z + step) - 2.0 * f0 +
                      torus_green_eval(green, z - step)) /
                     (step * step);
    const Real dyy = (torus_green_eval(green, z + step * kI) - 2.0 * f0 +
                      torus_green_eval(green, z - step * kI)) /
                     (step * step);
    return dxx + dyy;
  };
  return -0.25 * (4.0 * lap_at(h) - lap_at(2.0 * h)) / 3.0;
}

FayReport fay_torus_check(Complex tau, Complex z, Complex w,
                          int period_samples, Real fd_step) {
  const PeriodMatrix pm = torus_period(tau);
  const Complex u = z - w;
  require_off_lattice(u, tau, "fay_torus_check");
  if (period_samples < 16) {
    throw InputError("fay_torus_check: period_samples must be >= 16");
  }

  // Half characteristics shift the plain series argument by tau/2 + 1/2; the
  // exponential prefactor is affine in the argument, so second logarithmic
  // derivatives of the two agree.
  const Complex offset = 0.5 * tau + 0.5;
  const Real tol = 1e-14;
  auto second_log_deriv = [&](Complex v) {
    CVector arg(1);
    arg(0) = v;
    IVector a1 = IVector::Constant(1, 1);
    IVector a2 = IVector::Constant(1, 2);
    const Complex th = theta(arg, pm, tol);
    if (std::abs(th) < kDivisorFloor) {
      throw LatticePoint("fay_torus_check: singular separation");
    }
    const Complex d1 = theta_deriv(arg, pm, a1, tol);
    const Complex d2 = theta_deriv(arg, pm, a2, tol);
    return d2 / th - (d1 / th) * (d1 / th);
  };

  FayReport report;
  report.b_theta = -second_log_deriv(u + offset);

  const Real h = std::max(fd_step, 1e-3);
  const TorusGreen green = make_torus_green(tau);
  auto g_at = [&](Complex p) { return torus_green_eval(green, p); };
  const Real f0 = g_at(u);
  // Step-doubled stencils; the h^2 bias of the plain ones (driven by the
  // fourth log-derivative near the pole) would eat the 1e-5 budget.
  auto d_uu_at = [&](Real step) {
    const Real dxx = (g_at(u + step) - 2.0 * f0 + g_at(u - step)) /
                     (step * step);
    const Real dyy =
        (g_at(u + step * kI) - 2.0 * f0 + g_at(u - step * kI)) / (step * step);
    const Real dxy = (g_at(u + step + step * kI) - g_at(u + step - step * kI) -
                      g_at(u - step + step * kI) + g_at(u - step - step * kI)) /
                     (4.0 * step * step);
    return 0.25 * Complex(dxx - dyy, -2.0 * dxy);
  };
  const Complex d_uu = (4.0 * d_uu_at(h) - d_uu_at(2.0 * h)) / 3.0;
  report.b_green = kPi * d_uu + kPi / tau.imag();
  report.residual = std::abs(report.b_theta - report.b_green);

  KahanSum<Complex> loop;
  for (int k = 0; k < period_samples; ++k) {
    const Real s = (k + 0.5) / period_samples;
    loop.add(-second_log_deriv(s + 0.5 * tau + offset));
  }
  report.a_period = std::abs(loop.value()) / period_samples;
  return report;
}

}  // namespace taukit
