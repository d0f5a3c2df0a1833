#include "taukit/ward.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "taukit/errors.hpp"
#include "taukit/tau.hpp"

namespace taukit {

namespace {

// Chart for finite differences in moment coordinates: the map padded so that
// every perturbed coordinate exists in the square system, plus the base point.
struct MomentChart {
  ExteriorMap base;
  MomentSet t;
  int M = 4096;
  Real solve_tol = 1e-12;
};

MomentChart make_chart(const ExteriorMap& map, int top_coord, int M,
                       Real solve_tol) {
  MomentChart chart;
  chart.base = pad_map(map, std::max(map.order(), top_coord - 1));
  chart.M = M;
  chart.solve_tol = solve_tol;
  chart.t = exterior_moments(chart.base, chart.base.order() + 1, M);
  return chart;
}

ExteriorMap solve_at(const MomentChart& chart, const MomentSet& target) {
  return map_from_moments(target, chart.base, chart.solve_tol, chart.M);
}

InteriorMoments moments_at(const MomentChart& chart, const MomentSet& target,
                           int K) {
  return interior_moments(solve_at(chart, target), K, chart.M);
}

// Interior moments at the four Wirtinger sample points of coordinate t_m.
struct WirtingerSamples {
  InteriorMoments re_plus, re_minus, im_plus, im_minus;
};

WirtingerSamples wirtinger_samples(const MomentChart& chart, int m, Real h,
                                   int K) {
  WirtingerSamples s;
  MomentSet target = chart.t;
  target.t(m - 1) = chart.t.t(m - 1) + h;
  s.re_plus = moments_at(chart, target, K);
  target.t(m - 1) = chart.t.t(m - 1) - h;
  s.re_minus = moments_at(chart, target, K);
  target.t(m - 1) = chart.t.t(m - 1) + h * kI;
  s.im_plus = moments_at(chart, target, K);
  target.t(m - 1) = chart.t.t(m - 1) - h * kI;
  s.im_minus = moments_at(chart, target, K);
  return s;
}

// d/dt_m = (d/dRe - i d/dIm)/2 applied to a complex-valued sample set.
Complex wirtinger(Complex re_plus, Complex re_minus, Complex im_plus,
                  Complex im_minus, Real h) {
  const Complex d_re = (re_plus - re_minus) / (2.0 * h);
  const Complex d_im = (im_plus - im_minus) / (2.0 * h);
  return 0.5 * (d_re - kI * d_im);
}

HessianBlock hessian_block_at_step(const MomentChart& chart, int K, Real h) {
  HessianBlock block;
  block.order = K;
  block.holo = CMatrix::Zero(K, K);
  block.mixed = CMatrix::Zero(K, K);
  block.t0_row = CVector::Zero(K);

  MomentSet target = chart.t;
  target.t0 = chart.t.t0 + h;
  const InteriorMoments a_plus = moments_at(chart, target, K);
  target.t0 = chart.t.t0 - h;
  const InteriorMoments a_minus = moments_at(chart, target, K);
  block.t0t0 = (a_plus.v0 - a_minus.v0) / (2.0 * h);
  for (int n = 1; n <= K; ++n) {
    const Complex d = (a_plus.v(n - 1) - a_minus.v(n - 1)) / (2.0 * h);
    // d^2 log tau / dt_0 dt_n is real-analytic data; keep the complex value,
    // callers see any imaginary part as honest FD noise.
    block.t0_row(n - 1) = d;
  }

  for (int m = 1; m <= K; ++m) {
    const WirtingerSamples s = wirtinger_samples(chart, m, h, K);
    for (int n = 1; n <= K; ++n) {
      block.holo(m - 1, n - 1) =
          wirtinger(s.re_plus.v(n - 1), s.re_minus.v(n - 1),
                    s.im_plus.v(n - 1), s.im_minus.v(n - 1), h);
      block.mixed(m - 1, n - 1) = wirtinger(
          std::conj(s.re_plus.v(n - 1)), std::conj(s.re_minus.v(n - 1)),
          std::conj(s.im_plus.v(n - 1)), std::conj(s.im_minus.v(n - 1)), h);
    }
  }
  return block;
}

Real block_gap(const HessianBlock& a, const HessianBlock& b) {
  Real gap = std::abs(a.t0t0 - b.t0t0) / std::max(1.0, std::abs(a.t0t0));
  const int K = a.order;
  for (int n = 0; n < K; ++n) {
    gap = std::max(gap, std::abs(a.t0_row(n) - b.t0_row(n)) /
                            std::max(1.0, std::abs(a.t0_row(n))));
  }
  for (int m = 0; m < K; ++m) {
    for (int n = 0; n < K; ++n) {
      gap = std::max(gap, std::abs(a.holo(m, n) - b.holo(m, n)) /
                              std::max(1.0, std::abs(a.holo(m, n))));
      gap = std::max(gap, std::abs(a.mixed(m, n) - b.mixed(m, n)) /
                              std::max(1.0, std::abs(a.mixed(m, n))));
    }
  }
  return gap;
}

// Boundary samples on the half-step grid sigma_k = (k + 1/2) * 2 pi / M.
SampledContour sample_offset(const ExteriorMap& map, int M) {
  SampledContour c;
  c.z = CVector(M);
  c.dz = CVector(M);
  const Real h = kTwoPi / M;
  for (int k = 0; k < M; ++k) {
    const Complex w = std::exp(kI * (h * (k + 0.5)));
    c.z(k) = eval_g(map, w);
    c.dz(k) = eval_g_prime(map, w) * kI * w;
  }
  return c;
}

// Rows of powers z^1..z^K for a sample vector.
CMatrix power_rows(const CVector& z, int K) {
  CMatrix p(K, z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    Complex acc = 1.0;
    for (int m = 0; m < K; ++m) {
      acc *= z(j);
      p(m, j) = acc;
    }
  }
  return p;
}

Complex fd_holo_entry(const MomentChart& chart, int m, int n, Real h) {
  const WirtingerSamples s = wirtinger_samples(chart, m, h, n);
  return wirtinger(s.re_plus.v(n - 1), s.re_minus.v(n - 1), s.im_plus.v(n - 1),
                   s.im_minus.v(n - 1), h);
}

Complex fd_mixed_entry(const MomentChart& chart, int m, int n, Real h) {
  const WirtingerSamples s = wirtinger_samples(chart, m, h, n);
  return wirtinger(std::conj(s.re_plus.v(n - 1)), std::conj(s.re_minus.v(n - 1)),
                   std::conj(s.im_plus.v(n - 1)), std::conj(s.im_minus.v(n - 1)),
                   h);
}

}  // namespace

WardFirstOrderReport ward_first_order(const ExteriorMap& map, int N,
                                      Real fd_step, int M, Real solve_tol) {
  if (N < 0) throw InputError("ward_first_order: N must be >= 0");
  const MomentChart chart = make_chart(map, std::max(N, 1), M, solve_tol);
  const InteriorMoments v = interior_moments(chart.base, std::max(N, 1), M);

  WardFirstOrderReport report;
  report.v0 = v.v0;
  report.fd = CVector::Zero(N);
  report.vn = CVector::Zero(N);

  const Real h = fd_step;
  MomentSet target = chart.t;
  target.t0 = chart.t.t0 + h;
  const Real tau_plus = log_tau_boundary(solve_at(chart, target), M).log_tau;
  target.t0 = chart.t.t0 - h;
  const Real tau_minus = log_tau_boundary(solve_at(chart, target), M).log_tau;
  report.v0_fd = (tau_plus - tau_minus) / (2.0 * h);
  report.max_residual = std::abs(report.v0_fd - report.v0);

  for (int n = 1; n <= N; ++n) {
    MomentSet t = chart.t;
    t.t(n - 1) = chart.t.t(n - 1) + h;
    const Real re_plus = log_tau_boundary(solve_at(chart, t), M).log_tau;
    t.t(n - 1) = chart.t.t(n - 1) - h;
    const Real re_minus = log_tau_boundary(solve_at(chart, t), M).log_tau;
    t.t(n - 1) = chart.t.t(n - 1) + h * kI;
    const Real im_plus = log_tau_boundary(solve_at(chart, t), M).log_tau;
    t.t(n - 1) = chart.t.t(n - 1) - h * kI;
    const Real im_minus = log_tau_boundary(solve_at(chart, t), M).log_tau;
    const Complex fd = wirtinger(re_plus, re_minus, im_plus, im_minus, h);
    report.fd(n - 1) = fd;
    report.vn(n - 1) = v.v(n - 1);
    report.max_residual =
        std::max(report.max_residual, std::abs(fd - v.v(n - 1)));
  }
  return report;
}

ChainRuleReport ward_chain_rule(const std::function<ExteriorMap(Real)>& family,
                                Real s0, Real fd_step, int M) {
  const ExteriorMap base = family(s0);
  require_univalent(base, std::min(M, 4096));
  const ExteriorMap fwd = family(s0 + fd_step);
  const ExteriorMap bwd = family(s0 - fd_step);

  ChainRuleReport report;
  report.lhs = (log_tau_boundary(fwd, M).log_tau -
                log_tau_boundary(bwd, M).log_tau) /
               (2.0 * fd_step);

  // Harmonic moments vanish above order()+1, so a small margin of extra
  // terms only confirms the truncation rather than changing the sum.
  const int K = std::max({base.order(), fwd.order(), bwd.order()}) + 3;
  const MomentSet t_fwd = exterior_moments(fwd, K, M);
  const MomentSet t_bwd = exterior_moments(bwd, K, M);
  const InteriorMoments v = interior_moments(base, K, M);

  KahanSum<Real> rhs;
  rhs.add(v.v0 * (t_fwd.t0 - t_bwd.t0) / (2.0 * fd_step));
  for (int n = 1; n <= K; ++n) {
    const Complex t_dot = (t_fwd.t(n - 1) - t_bwd.t(n - 1)) / (2.0 * fd_step);
    rhs.add(2.0 * std::real(v.v(n - 1) * t_dot));
  }
  report.rhs = rhs.value();
  report.residual = std::abs(report.lhs - report.rhs);
  return report;
}

HessianBlock hessian_block_fd(const ExteriorMap& map, int K, Real fd_step,
                              int M, Real solve_tol) {
  if (K < 1) throw InputError("hessian_block_fd: K must be >= 1");
  const MomentChart chart = make_chart(map, K, M, solve_tol);
  HessianBlock block = hessian_block_at_step(chart, K, fd_step);
  const HessianBlock coarse = hessian_block_at_step(chart, K, 2.0 * fd_step);
  block.richardson_gap = block_gap(block, coarse);
  return block;
}

CMatrix schiffer_hessian_block(const ExteriorMap& map, int K, int M) {
  if (K < 1) throw InputError("schiffer_hessian_block: K must be >= 1");
  require_univalent(map, std::min(M, 4096));
  const SampledContour on = sample(map, M);
  const SampledContour off = sample_offset(map, M);
  const int n_samples = on.samples();
  const Real h = kTwoPi / n_samples;
  const Real pref = -h * h / (4.0 * kPi * kPi);  // h^2 / (2 pi i)^2

  // Circle part of the kernel is circulant: w_i u_j / (w_i - u_j)^2 depends
  // only on u_j / w_i = exp(i h (j - i + 1/2)).
  std::vector<Complex> circle(n_samples);
  for (int d = 0; d < n_samples; ++d) {
    const Complex q = std::exp(kI * (h * (d + 0.5)));
    const Complex one_minus = 1.0 - q;
    circle[d] = q / (one_minus * one_minus);
  }

  const CMatrix zp = power_rows(on.z, K);
  const CMatrix up = power_rows(off.z, K);

  std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(K) * K);
  std::vector<Complex> kern(n_samples);
  std::vector<Complex> row_dot(K);
  for (int i = 0; i < n_samples; ++i) {
    for (int j = 0; j < n_samples; ++j) {
      const int d = j - i >= 0 ? j - i : j - i + n_samples;
      const Complex diff = on.z(i) - off.z(j);
      kern[j] = (-circle[d] - on.dz(i) * off.dz(j) / (diff * diff)) * pref;
    }
    for (int n = 0; n < K; ++n) {
      Complex dot = 0.0;
      for (int j = 0; j < n_samples; ++j) dot += kern[j] * up(n, j);
      row_dot[n] = dot;
    }
    for (int m = 0; m < K; ++m) {
      for (int n = 0; n < K; ++n) {
        acc[static_cast<std::size_t>(m) * K + n].add(zp(m, i) * row_dot[n]);
      }
    }
  }

  CMatrix block(K, K);
  for (int m = 0; m < K; ++m) {
    for (int n = 0; n < K; ++n) {
      block(m, n) = acc[static_cast<std::size_t>(m) * K + n].value();
    }
  }
  return block;
}

CMatrix bergman_hessian_block(const ExteriorMap& map, int K, Real rho, int M) {
  if (K < 1) throw InputError("bergman_hessian_block: K must be >= 1");
  if (!(rho > 1.0)) throw InputError("bergman_hessian_block: rho must be > 1");
  require_univalent(map, std::min(M, 4096));

  // g restricted to |w| = rho is g_rho on the unit circle; reuse the sampled
  // univalence check there before trusting the contour.
  ExteriorMap scaled;
  scaled.r = map.r * rho;
  scaled.b0 = map.b0;
  scaled.coeffs = map.coeffs;
  Real rk = 1.0;
  for (int k = 0; k < scaled.order(); ++k) {
    rk /= rho;
    scaled.coeffs(k) *= rk;
  }
  const UnivalenceReport uni = check_univalent(scaled, std::min(M, 4096));
  if (!uni.ok) {
    throw UnivalenceLost("bergman_hessian_block: image of |w| = rho: " +
                         uni.failure);
  }

  const SampledContour plus = sample(scaled, M);
  const int n_samples = plus.samples();
  const Real h = kTwoPi / n_samples;
  const Real pref = h * h / (4.0 * kPi * kPi);  // -h^2 / (2 pi i)^2

  // w_j conj(w_k) = rho^2 exp(i h (j - k)): circulant kernel values.
  std::vector<Complex> circ(n_samples);
  for (int d = 0; d < n_samples; ++d) {
    const Complex q = rho * rho * std::exp(kI * (h * d));
    const Complex one_minus = 1.0 - q;
    circ[d] = pref * q / (one_minus * one_minus);
  }

  const CMatrix zp = power_rows(plus.z, K);
  const CMatrix zbar = zp.conjugate();

  std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(K) * K);
  std::vector<Complex> kern(n_samples);
  std::vector<Complex> row_dot(K);
  for (int j = 0; j < n_samples; ++j) {
    for (int k = 0; k < n_samples; ++k) {
      const int d = j - k >= 0 ? j - k : j - k + n_samples;
      kern[k] = circ[d];
    }
    for (int n = 0; n < K; ++n) {
      Complex dot = 0.0;
      for (int k = 0; k < n_samples; ++k) dot += kern[k] * zbar(n, k);
      row_dot[n] = dot;
    }
    for (int m = 0; m < K; ++m) {
      for (int n = 0; n < K; ++n) {
        acc[static_cast<std::size_t>(m) * K + n].add(zp(m, j) * row_dot[n]);
      }
    }
  }

  CMatrix block(K, K);
  for (int m = 0; m < K; ++m) {
    for (int n = 0; n < K; ++n) {
      block(m, n) = acc[static_cast<std::size_t>(m) * K + n].value();
    }
  }
  return block;
}

EntryComparison hessian_vs_schiffer(const ExteriorMap& map, int m, int n,
                                    Real fd_step, int M) {
  if (m < 1 || n < 1) throw InputError("hessian_vs_schiffer: m, n must be >= 1");
  const int K = std::max(m, n);
  const MomentChart chart = make_chart(map, K, M, 1e-12);
  EntryComparison cmp;
  cmp.fd = fd_holo_entry(chart, m, n, fd_step);
  cmp.quad = schiffer_hessian_block(map, K, M)(m - 1, n - 1);
  cmp.residual = std::abs(cmp.fd - cmp.quad);
  return cmp;
}

EntryComparison hessian_vs_bergman(const ExteriorMap& map, int m, int n,
                                   Real rho, Real fd_step, int M) {
  if (m < 1 || n < 1) throw InputError("hessian_vs_bergman: m, n must be >= 1");
  const int K = std::max(m, n);
  const MomentChart chart = make_chart(map, K, M, 1e-12);
  EntryComparison cmp;
  cmp.fd = fd_mixed_entry(chart, m, n, fd_step);
  cmp.quad = bergman_hessian_block(map, K, rho, M)(m - 1, n - 1);
  cmp.residual = std::abs(cmp.fd - cmp.quad);

  const Real rhos[] = {1.3, 1.5, 2.0};
  Complex values[3];
  for (int i = 0; i < 3; ++i) {
    values[i] = rhos[i] == rho ? cmp.quad
                               : bergman_hessian_block(map, K, rhos[i],
                                                       M)(m - 1, n - 1);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      cmp.rho_spread = std::max(cmp.rho_spread, std::abs(values[i] - values[j]));
    }
  }
  return cmp;
}

MetricGram metric_gram(const ExteriorMap& map, int N, Real rho, int M) {
  MetricGram gram;
  gram.order = N;
  gram.h = bergman_hessian_block(map, N, rho, M);
  gram.hermitian_defect = (gram.h - gram.h.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(
      0.5 * (gram.h + CMatrix(gram.h.adjoint())));
  gram.min_eigenvalue = eig.eigenvalues().minCoeff();
  return gram;
}

CVector equilibrium_moments(const ExteriorMap& map, int N, int M) {
  if (N < 0) throw InputError("equilibrium_moments: N must be >= 0");
  require_univalent(map, std::min(M, 4096));
  const SampledContour c = sample(map, std::min(M, 4096));
  Real max_abs = 0.0;
  for (int k = 0; k < c.samples(); ++k) {
    max_abs = std::max(max_abs, std::abs(c.z(k)));
  }
  const Real rho_out = 2.5 * max_abs;

  const Real h = kTwoPi / M;
  std::vector<KahanSum<Complex>> acc(static_cast<std::size_t>(N) + 1);
  for (int k = 0; k < M; ++k) {
    const Complex z = rho_out * std::exp(kI * (h * k));
    const Complex big_g = eval_G(map, z);
    const Complex ratio = eval_G_prime(map, z) / big_g;
    Complex zpow = z;  // z^{n+1} starting at n = 0
    for (int n = 0; n <= N; ++n) {
      acc[static_cast<std::size_t>(n)].add(ratio * zpow);
      zpow *= z;
    }
  }
  CVector moments(N + 1);
  for (int n = 0; n <= N; ++n) {
    moments(n) = acc[static_cast<std::size_t>(n)].value() * (h / kTwoPi);
  }
  return moments;
}

ReconstructionReport reconstruct_logG(const ExteriorMap& map, int K, Complex z,
                                      Real fd_step, int M, Real tail_tol) {
  if (K < 1) throw InputError("reconstruct_logG: K must be >= 1");
  const MomentChart chart = make_chart(map, K, M, 1e-12);

  MomentSet target = chart.t;
  target.t0 = chart.t.t0 + fd_step;
  const InteriorMoments plus = moments_at(chart, target, K);
  target.t0 = chart.t.t0 - fd_step;
  const InteriorMoments minus = moments_at(chart, target, K);

  const Real t0t0 = (plus.v0 - minus.v0) / (2.0 * fd_step);
  ReconstructionReport report;
  KahanSum<Complex> sum;
  sum.add(std::log(z));
  sum.add(Complex(-0.5 * t0t0, 0.0));
  Complex zinv_pow = 1.0;
  for (int n = 1; n <= K; ++n) {
    zinv_pow /= z;
    const Complex row = (plus.v(n - 1) - minus.v(n - 1)) / (2.0 * fd_step);
    const Complex term = -zinv_pow / static_cast<Real>(n) * row;
    sum.add(term);
    if (n == K) report.last_term = std::abs(term);
  }
  if (report.last_term > tail_tol) {
    throw TailTooLarge("reconstruct_logG: K-th series term " +
                       std::to_string(report.last_term) +
                       " exceeds the tail tolerance; increase |z| or K");
  }
  report.reconstructed = sum.value();
  report.direct = std::log(eval_G(map, z));
  report.residual = std::abs(report.reconstructed - report.direct);
  return report;
}

IntegratedIdentityReport integrated_identities(const ExteriorMap& map, Complex z,
                                               Complex w, int K, int M, Real rho,
                                               Real tail_tol) {
  if (K < 1) throw InputError("integrated_identities: K must be >= 1");
  const CMatrix holo = schiffer_hessian_block(map, K, M);
  const CMatrix mixed = bergman_hessian_block(map, K, rho, M);

  IntegratedIdentityReport report;
  const Complex big_gz = eval_G(map, z);
  const Complex big_gw = eval_G(map, w);

  if (std::abs(z - w) <= 1e-9 * (1.0 + std::abs(z))) {
    // Diagonal limit of (G(z) - G(w))/(z - w).
    report.lhs_holo = std::log(eval_G_prime(map, z));
  } else {
    report.lhs_holo = std::log((big_gz - big_gw) / (z - w));
  }
  const Complex product = big_gz * std::conj(big_gw);
  report.lhs_mixed = std::log(product / (product - 1.0));

  // Series sides; t0t0 enters through its closed form 2 log r so the whole
  // right side stays on the quadrature route.
  KahanSum<Complex> rhs_holo;
  rhs_holo.add(Complex(-std::log(map.r), 0.0));
  KahanSum<Complex> rhs_mixed;
  Real border = 0.0;
  for (int m = 1; m <= K; ++m) {
    for (int n = 1; n <= K; ++n) {
      const Real mn = static_cast<Real>(m) * static_cast<Real>(n);
      const Complex weight_holo =
          std::pow(z, -m) * std::pow(w, -n) / mn * holo(m - 1, n - 1);
      const Complex weight_mixed = std::pow(z, -m) * std::pow(std::conj(w), -n) /
                                   mn * mixed(m - 1, n - 1);
      rhs_holo.add(weight_holo);
      rhs_mixed.add(weight_mixed);
      if (m == K || n == K) {
        border = std::max({border, std::abs(weight_holo), std::abs(weight_mixed)});
      }
    }
  }
  if (border > tail_tol) {
    throw TailTooLarge("integrated_identities: truncation-border term " +
                       std::to_string(border) +
                       " exceeds the tail tolerance; increase |z|, |w|, or K");
  }
  report.rhs_holo = rhs_holo.value();
  report.rhs_mixed = rhs_mixed.value();
  report.residual_holo = std::abs(report.lhs_holo - report.rhs_holo);
  report.residual_mixed = std::abs(report.lhs_mixed - report.rhs_mixed);
  return report;
}

}  // namespace taukit
