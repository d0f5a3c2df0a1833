#include "taukit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "taukit/errors.hpp"
#include "taukit/genus.hpp"
#include "taukit/kernels.hpp"
#include "taukit/moments.hpp"
#include "taukit/tau.hpp"
#include "taukit/theta.hpp"
#include "taukit/ward.hpp"

namespace taukit {

namespace {

// splitmix64: identical draws on every platform, unlike <random>
// distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  Real uniform(Real lo, Real hi) {
    return lo + (hi - lo) * (static_cast<Real>(next() >> 11) * 0x1.0p-53);
  }
};

ExteriorMap disk_map(Real radius) {
  ExteriorMap m;
  m.r = radius;
  m.coeffs.resize(0);
  return m;
}

ExteriorMap ellipse_map() {
  ExteriorMap m;
  m.r = 1.0;
  m.coeffs.resize(1);
  m.coeffs[0] = 0.3;
  return m;
}

ExteriorMap two_coeff_map() {
  ExteriorMap m;
  m.r = 1.0;
  m.coeffs.resize(2);
  m.coeffs[0] = 0.12;
  m.coeffs[1] = Complex(0.04, 0.03);
  return m;
}

ExteriorMap scaled_map(const ExteriorMap& map, Real lambda) {
  ExteriorMap m = map;
  m.r *= lambda;
  m.b0 *= lambda;
  for (int k = 0; k < m.coeffs.size(); ++k) m.coeffs[k] *= lambda;
  return m;
}

// Contour rotation e^{i theta} C corresponds to b_k -> e^{i(k+1)theta} b_k
// (and b0 -> e^{i theta} b0) with r unchanged.
ExteriorMap rotated_map(const ExteriorMap& map, Real theta) {
  ExteriorMap m = map;
  m.b0 *= std::polar(1.0, theta);
  for (int k = 0; k < m.coeffs.size(); ++k)
    m.coeffs[k] *= std::polar(1.0, (k + 2) * theta);
  return m;
}

ExteriorMap conjugated_map(const ExteriorMap& map) {
  ExteriorMap m = map;
  m.b0 = std::conj(m.b0);
  for (int k = 0; k < m.coeffs.size(); ++k) m.coeffs[k] = std::conj(m.coeffs[k]);
  return m;
}

Real outer_radius(const ExteriorMap& map) {
  SampledContour c = sample(map, 256);
  Real r = 0.0;
  for (int k = 0; k < c.samples(); ++k) r = std::max(r, std::abs(c.z[k]));
  return r;
}

Real max_abs_diff(const CMatrix& a, const CMatrix& b) {
  Real m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

CMatrix random_omega(Rng& rng, int g) {
  // Diagonally dominant imaginary part keeps Im(Omega) positive definite for
  // g <= 3 without an eigen-solve.
  CMatrix omega(g, g);
  for (int i = 0; i < g; ++i) {
    omega(i, i) =
        Complex(rng.uniform(-0.45, 0.45), 1.0 + 0.8 * rng.uniform(0.0, 1.0));
    for (int j = i + 1; j < g; ++j) {
      const Complex off(rng.uniform(-0.3, 0.3), rng.uniform(-0.22, 0.22));
      omega(i, j) = off;
      omega(j, i) = off;
    }
  }
  return omega;
}

CVector random_z(Rng& rng, int g) {
  CVector z(g);
  for (int j = 0; j < g; ++j)
    z(j) = Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.45, 0.45));
  return z;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.samples < 64 || (cfg.samples & (cfg.samples - 1)) != 0) {
    throw InputError("config: samples must be a power of two >= 64");
  }
  if (!(cfg.rho > 1.0) || !(cfg.rho <= 4.0)) {
    throw InputError("config: rho must satisfy 1 < rho <= 4");
  }
  if (!(cfg.tol > 0.0)) throw InputError("config: tol must be > 0");
  if (cfg.grid_n < 16) throw InputError("config: grid_n must be >= 16");
  if (!(cfg.fd_step > 0.0)) throw InputError("config: fd_step must be > 0");
  if (cfg.order < 1 || cfg.order > 16) {
    throw InputError("config: order must be between 1 and 16");
  }
}

CheckResult make_check(const std::string& name, Real lhs, Real rhs,
                       Real residual, Real tolerance) {
  CheckResult c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  return c;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<CheckResult> verify_map_suite(const ExteriorMap& map,
                                          const RunConfig& cfg) {
  validate_config(cfg);
  require_univalent(map, std::min(cfg.samples, 4096));
  std::vector<CheckResult> out;
  const Real r_out = outer_radius(map);

  {  // g(G(z)) = z on random exterior points.
    Rng rng(0x5eed0001ull);
    Real worst = 0.0;
    Complex last_z, last_back;
    for (int k = 0; k < 100; ++k) {
      const Real s = rng.uniform(1.15, 6.0) * r_out;
      const Complex z = std::polar(s, rng.uniform(0.0, kTwoPi));
      const Complex back = eval_g(map, eval_G(map, z));
      const Real res = std::abs(back - z) / (1.0 + std::abs(z));
      if (res >= worst) {
        worst = res;
        last_z = z;
        last_back = back;
      }
    }
    out.push_back(make_check("map-roundtrip-g-of-G", std::abs(last_back),
                             std::abs(last_z), worst, 1e-12));
  }

  {  // |F_n(G(z)) - z^n| |z| stays bounded along an exterior ray.
    const Real lo = std::max(5.0, 1.5 * r_out);
    const Real angle = 0.35;
    Real q_lo_max = 0.0, q_far_max = 0.0, worst_ratio = 0.0;
    for (int n = 1; n <= 8; ++n) {
      FaberPolynomial f = faber(map, n);
      auto defect = [&](Real s) {
        const Complex z = std::polar(s, angle);
        return std::abs(eval_poly(f, eval_G(map, z)) - std::pow(z, n)) * s;
      };
      const Real q_lo = defect(lo);
      for (Real mult : {2.0, 4.0, 10.0}) {
        const Real s = lo * mult;
        // Skip points where forming z^n already costs more than the defect
        // scale in double precision.
        if (2e-16 * std::pow(s, n + 1) > 1e-3) continue;
        const Real q = defect(s);
        q_lo_max = std::max(q_lo_max, q_lo);
        q_far_max = std::max(q_far_max, q);
        worst_ratio = std::max(worst_ratio, q / (q_lo + 1e-9));
      }
    }
    out.push_back(make_check("faber-defect-bounded", q_far_max, q_lo_max,
                             worst_ratio, 2.5));
  }

  {  // Deformation-form duality against the identity.
    const CMatrix d = duality_matrix(map, 6, 4096);
    Real worst = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        worst = std::max(worst,
                         std::abs(d(i, j) - (i == j ? Complex(1) : Complex(0))));
    out.push_back(make_check("faber-duality-identity", worst, 0.0, worst, 1e-10));
  }

  {  // Pointwise kernel symmetries at exterior pairs.
    const Complex p1 = std::polar(2.2 * r_out, 0.4);
    const Complex p2 = std::polar(3.0 * r_out, 1.9);
    const Complex p3 = std::polar(2.6 * r_out, -1.4);
    Real sym = 0.0, herm = 0.0;
    const std::pair<Complex, Complex> pairs[] = {{p1, p2}, {p1, p3}, {p2, p3}};
    for (const auto& [a, b] : pairs) {
      sym = std::max(sym, std::abs(schiffer_kernel_ext(map, a, b) -
                                   schiffer_kernel_ext(map, b, a)));
      herm = std::max(herm, std::abs(bergman_kernel_ext(map, a, b) -
                                     std::conj(bergman_kernel_ext(map, b, a))));
    }
    out.push_back(make_check("schiffer-kernel-symmetry", sym, 0.0, sym, 1e-12));
    out.push_back(make_check("bergman-kernel-hermitian", herm, 0.0, herm, 1e-12));
  }

  {  // Closed-form area against boundary quadrature.
    const Real a_closed = area(map);
    const Real a_quad = area_quadrature(sample(map, cfg.samples));
    const Real res = std::abs(a_closed - a_quad) / std::abs(a_closed);
    out.push_back(
        make_check("area-closed-vs-quadrature", a_closed, a_quad, res, 1e-10));
  }
  return out;
}

std::vector<CheckResult> verify_moment_suite(const ExteriorMap& map,
                                             const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<CheckResult> out;
  const int N = map.order();

  {  // t_n = 0 beyond the truncation order.
    const MomentSet mo = exterior_moments(map, N + 6, 4096);
    Real worst = 0.0;
    for (int n = N + 2; n <= N + 6; ++n)
      worst = std::max(worst, std::abs(mo.t[n - 1]));
    out.push_back(
        make_check("moment-truncation-window", worst, 0.0, worst, 1e-10));
  }

  const int K = std::max(4, N + 1);
  const MomentSet mo = exterior_moments(map, K, cfg.samples);
  const InteriorMoments im = interior_moments(map, K, cfg.samples);

  {  // Conjugating the map conjugates every moment.
    const ExteriorMap cm = conjugated_map(map);
    const MomentSet moc = exterior_moments(cm, K, cfg.samples);
    const InteriorMoments imc = interior_moments(cm, K, cfg.samples);
    Real worst = std::abs(moc.t0 - mo.t0);
    worst = std::max(worst, std::abs(imc.v0 - im.v0));
    for (int n = 0; n < K; ++n) {
      worst = std::max(worst, std::abs(moc.t[n] - std::conj(mo.t[n])));
      worst = std::max(worst, std::abs(imc.v[n] - std::conj(im.v[n])));
    }
    out.push_back(make_check("moment-conjugation", worst, 0.0, worst, 1e-12));
  }

  {  // z -> lambda z: t0, t_n, v0, v_n transform with fixed powers.
    const Real lam = 1.3;
    const ExteriorMap sm = scaled_map(map, lam);
    const MomentSet mos = exterior_moments(sm, K, cfg.samples);
    const InteriorMoments ims = interior_moments(sm, K, cfg.samples);
    auto rel = [](Complex got, Complex want) {
      return std::abs(got - want) / (1.0 + std::abs(want));
    };
    Real worst = rel(mos.t0, lam * lam * mo.t0);
    worst = std::max(
        worst, rel(ims.v0, lam * lam * (im.v0 + 2.0 * mo.t0 * std::log(lam))));
    for (int n = 1; n <= K; ++n) {
      worst = std::max(worst,
                       rel(mos.t[n - 1], std::pow(lam, 2 - n) * mo.t[n - 1]));
      worst = std::max(worst,
                       rel(ims.v[n - 1], std::pow(lam, n + 2) * im.v[n - 1]));
    }
    out.push_back(make_check("moment-scaling-law", worst, 0.0, worst, 1e-10));
  }

  {  // Newton inversion recovers the map's own moments.
    const MomentSet target = exterior_moments(map, N + 1, cfg.samples);
    ExteriorMap seed = map;
    seed.r *= 1.02;
    for (int k = 0; k < seed.coeffs.size(); ++k) seed.coeffs[k] *= 0.85;
    const ExteriorMap solved =
        map_from_moments(target, seed, 1e-12, cfg.samples);
    const MomentSet got = exterior_moments(solved, N + 1, cfg.samples);
    Real worst = std::abs(got.t0 - target.t0);
    for (int n = 0; n < target.count(); ++n)
      worst = std::max(worst, std::abs(got.t[n] - target.t[n]));
    out.push_back(
        make_check("moment-newton-roundtrip", worst, 0.0, worst, 1e-10));
  }
  return out;
}

std::vector<CheckResult> verify_tau_suite(const ExteriorMap& map,
                                          const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<CheckResult> out;

  {  // Disk closed form (1/2) t0^2 log t0 - (3/4) t0^2.
    Real worst = 0.0, lhs = 0.0, rhs = 0.0;
    for (Real radius : {0.6, 1.0, 1.7}) {
      const TauReport rep = log_tau_boundary(disk_map(radius), cfg.samples);
      const Real r4 = std::pow(radius, 4);
      const Real closed = r4 * std::log(radius) - 0.75 * r4;
      if (std::abs(rep.log_tau - closed) >= worst) {
        worst = std::abs(rep.log_tau - closed);
        lhs = rep.log_tau;
        rhs = closed;
      }
    }
    out.push_back(make_check("tau-disk-closed-form", lhs, rhs, worst, 1e-8));
  }

  {  // Boundary reduction against the midpoint-cell oracle.
    const int gn = std::max(cfg.grid_n, 300);
    const std::pair<const char*, ExteriorMap> oracles[] = {
        {"tau-boundary-vs-grid-ellipse", ellipse_map()},
        {"tau-boundary-vs-grid-two-coeff", two_coeff_map()}};
    for (const auto& [name, m] : oracles) {
      const TauReport b = log_tau_boundary(m, cfg.samples);
      const TauReport g = log_tau_grid(m, gn, cfg.samples);
      const Real res = std::abs(b.log_tau - g.log_tau) / std::abs(g.log_tau);
      out.push_back(make_check(name, b.log_tau, g.log_tau, res, 1e-3));
    }
  }

  {  // Swapping the two quadrature loops only reorders the summation.
    const Real defect = energy_swap_defect(map, cfg.samples);
    out.push_back(
        make_check("tau-energy-swap-symmetry", defect, 0.0, defect, 1e-12));
  }

  const TauReport base = log_tau_boundary(map, cfg.samples);

  {  // Rotation b_k -> e^{i(k+1)theta} b_k leaves log tau fixed.
    const TauReport rot = log_tau_boundary(rotated_map(map, 0.7), cfg.samples);
    const Real res = std::abs(rot.log_tau - base.log_tau);
    out.push_back(make_check("tau-rotation-invariance", rot.log_tau,
                             base.log_tau, res, 1e-9));
  }

  {  // log tau(lambda C) = lambda^4 (log tau + A^2 log lambda / pi^2);
    // specializing to the disk reproduces the closed form above.
    const Real lam = 1.3;
    const TauReport direct = log_tau_boundary(scaled_map(map, lam), cfg.samples);
    const Real predicted =
        std::pow(lam, 4) *
        (base.log_tau + base.area * base.area * std::log(lam) / (kPi * kPi));
    const Real res = std::abs(direct.log_tau - predicted);
    out.push_back(
        make_check("tau-scaling-law", direct.log_tau, predicted, res, 5e-8));
  }
  return out;
}

std::vector<CheckResult> verify_ward_suite(const ExteriorMap& map,
                                           const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<CheckResult> out;

  const HessianBlock block = hessian_block_fd(map, 4, cfg.fd_step, cfg.samples);
  const CMatrix s3 = schiffer_hessian_block(map, 3, cfg.samples);
  const CMatrix b3 = bergman_hessian_block(map, 3, cfg.rho, cfg.samples);

  {
    const Real sym = max_abs_diff(s3, s3.transpose());
    out.push_back(make_check("hessian-quad-symmetry", sym, 0.0, sym, 1e-10));
    const Real herm = max_abs_diff(b3, b3.adjoint());
    out.push_back(make_check("hessian-quad-hermiticity", herm, 0.0, herm, 1e-10));
  }

  {
    const Real res = std::max(max_abs_diff(block.holo, block.holo.transpose()),
                              max_abs_diff(block.mixed, block.mixed.adjoint()));
    out.push_back(make_check("hessian-fd-symmetry", res, 0.0, res, 1e-4));
  }

  {  // Metric gram equals the mixed Hessian block.
    const MetricGram mg = metric_gram(map, 4, cfg.rho, cfg.samples);
    const Real res = max_abs_diff(mg.h, block.mixed);
    out.push_back(make_check("kahler-metric-vs-mixed-hessian",
                             mg.min_eigenvalue, 0.0, res, 1e-4));
  }

  {  // The rho contour is arbitrary; the integrals must not see it.
    const CMatrix lo = bergman_hessian_block(map, 3, 1.3, cfg.samples);
    const CMatrix mid = bergman_hessian_block(map, 3, 1.5, cfg.samples);
    const CMatrix hi = bergman_hessian_block(map, 3, 2.0, cfg.samples);
    const Real spread = std::max(max_abs_diff(lo, mid),
                                 std::max(max_abs_diff(mid, hi),
                                          max_abs_diff(lo, hi)));
    out.push_back(
        make_check("hessian-rho-independence", spread, 0.0, spread, 1e-8));
  }

  const CVector eq = equilibrium_moments(map, 4, cfg.samples);

  {  // Quadrature route vs the exact Laurent constant terms of g^n.
    Real worst = 0.0;
    for (int n = 0; n <= 4; ++n)
      worst = std::max(worst, std::abs(eq(n) - laurent_constant_term(map, n)));
    out.push_back(make_check("equilibrium-moments-vs-series", std::abs(eq(1)),
                             std::abs(laurent_constant_term(map, 1)), worst,
                             1e-10));
  }

  {  // Same numbers as the t0 row of the Hessian.
    Real worst = 0.0;
    for (int n = 1; n <= 4; ++n)
      worst = std::max(worst, std::abs(eq(n) - block.t0_row(n - 1)));
    out.push_back(make_check("equilibrium-vs-hessian-t0-row", std::abs(eq(1)),
                             std::abs(block.t0_row(0)), worst, 1e-4));
  }

  {
    const Real want = 2.0 * std::log(map.r);
    const Real res = std::abs(block.t0t0 - want);
    out.push_back(
        make_check("hessian-t0t0-vs-2logr", block.t0t0, want, res, 1e-4));
  }
  return out;
}

std::vector<CheckResult> verify_theta_suite(const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<CheckResult> out;

  {  // Doubling the truncation box moves theta by less than the tail budget.
    Rng rng(0x5eed0002ull);
    const Real tol = 1e-10;
    Real worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const int g = 1 + k % 3;
      const PeriodMatrix pm = make_period_matrix(random_omega(rng, g));
      const CVector z = random_z(rng, g);
      const RVector zero = RVector::Zero(g);
      const IVector no_deriv = IVector::Zero(g);
      const int radius = theta_box_radius(z, pm, 0, tol);
      const Complex v1 = theta_shifted_sum(z, pm, zero, zero, no_deriv, tol);
      const Complex v2 =
          theta_shifted_sum(z, pm, zero, zero, no_deriv, tol, radius);
      worst = std::max(worst, std::abs(v1 - v2));
    }
    out.push_back(
        make_check("theta-truncation-soundness", worst, 0.0, worst, tol));
  }

  Rng rng(0x5eed0003ull);
  const PeriodMatrix pm2 = make_period_matrix(random_omega(rng, 2));
  const CVector z2 = random_z(rng, 2);

  {  // theta(Z + m) = theta(Z) for integer m.
    CVector shifted = z2;
    shifted(0) += 2.0;
    shifted(1) -= 1.0;
    const Complex a = theta(z2, pm2);
    const Complex b = theta(shifted, pm2);
    out.push_back(make_check("theta-integer-periodicity", std::abs(a),
                             std::abs(b), std::abs(a - b), 1e-12));
  }

  {  // Characteristic sum: prefactor route vs direct shifted lattice sum.
    Characteristics xi;
    xi.xi_a = RVector(2);
    xi.xi_a << 0.3, -0.45;
    xi.xi_b = RVector(2);
    xi.xi_b << 0.15, 0.7;
    const Complex pref = theta_char(xi, z2, pm2, 1e-12);
    const Complex direct = theta_shifted_sum(z2, pm2, xi.xi_a, xi.xi_b,
                                             IVector::Zero(2), 1e-12);
    const Real res =
        std::abs(pref - direct) / std::max(1.0, std::abs(pref));
    out.push_back(make_check("theta-char-two-route", std::abs(pref),
                             std::abs(direct), res, 1e-11));
  }

  {  // Analytic gradient vs central differences.
    const Real h = 1e-5;
    Real worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      IVector alpha = IVector::Zero(2);
      alpha(i) = 1;
      const Complex an = theta_deriv(z2, pm2, alpha, 1e-13);
      CVector zp = z2, zm = z2;
      zp(i) += h;
      zm(i) -= h;
      const Complex fd =
          (theta(zp, pm2, 1e-13) - theta(zm, pm2, 1e-13)) / (2.0 * h);
      worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(an)));
    }
    out.push_back(make_check("theta-gradient-vs-fd", worst, 0.0, worst, 1e-5));
  }
  return out;
}

std::vector<CheckResult> verify_genus_suite(const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<CheckResult> out;

  // Fixed sweep: two genus-1 and two genus-2 inputs.
  std::vector<InstantonInput> inputs;
  {
    CMatrix o1(1, 1);
    o1(0, 0) = Complex(0.21, 1.13);
    Characteristics x1;
    x1.xi_a = RVector(1);
    x1.xi_a << 0.31;
    x1.xi_b = RVector(1);
    x1.xi_b << -0.22;
    inputs.push_back(make_instanton_input(o1, x1));

    CMatrix o2(1, 1);
    o2(0, 0) = Complex(-0.35, 0.87);
    Characteristics x2;
    x2.xi_a = RVector(1);
    x2.xi_a << 0.12;
    x2.xi_b = RVector(1);
    x2.xi_b << 0.41;
    inputs.push_back(make_instanton_input(o2, x2));

    CMatrix o3(2, 2);
    o3 << Complex(0.2, 1.1), Complex(0.12, 0.06), Complex(0.12, 0.06),
        Complex(-0.15, 1.33);
    Characteristics x3;
    x3.xi_a = RVector(2);
    x3.xi_a << 0.27, -0.14;
    x3.xi_b = RVector(2);
    x3.xi_b << -0.33, 0.18;
    inputs.push_back(make_instanton_input(o3, x3));

    CMatrix o4(2, 2);
    o4 << Complex(-0.1, 0.9), Complex(-0.08, 0.1), Complex(-0.08, 0.1),
        Complex(0.3, 1.5);
    Characteristics x4;
    x4.xi_a = RVector(2);
    x4.xi_a << 0.05, 0.44;
    x4.xi_b = RVector(2);
    x4.xi_b << 0.29, -0.07;
    inputs.push_back(make_instanton_input(o4, x4));
  }

  {  // Primitive sum, quadratic-form sum, and Poisson closed form agree.
    Real worst = 0.0, lhs = 0.0, rhs = 0.0;
    for (const auto& input : inputs) {
      const int window = recommended_window(input, 1e-8);
      const Complex p = zinst_primitive(input, window);
      const Complex q = zinst_qa(input, window);
      const Real c = zinst_closed(input);
      const Real scale = std::max({std::abs(c), std::abs(p), 1e-30});
      const Real res = std::max({std::abs(p - q), std::abs(p - c),
                                 std::abs(q - c)}) /
                       scale;
      if (res >= worst) {
        worst = res;
        lhs = p.real();
        rhs = c;
      }
    }
    out.push_back(make_check("zinst-triple-agreement", lhs, rhs, worst, 1e-6));
  }

  {  // Positivity plus Z -> -Z symmetry of the closed form.
    Real worst = 0.0, value = 0.0;
    for (const auto& input : inputs) {
      const BoldTau bt = bold_tau(input);
      const CMatrix omega = input.pm.omega;
      CVector z(input.pm.g);
      for (int j = 0; j < input.pm.g; ++j) {
        Complex acc(input.xi.xi_b(j), 0.0);
        for (int k = 0; k < input.pm.g; ++k)
          acc += omega(j, k) * input.xi.xi_a(k);
        z(j) = acc;
      }
      const BoldTau neg = bold_tau(instanton_input_from_z(omega, -z));
      Real res = std::abs(bt.log_value - neg.log_value);
      if (!(bt.value > 0.0)) res = 1.0;
      if (res >= worst) {
        worst = res;
        value = bt.value;
      }
    }
    out.push_back(
        make_check("bold-tau-positivity-z2", value, value, worst, 1e-10));
  }

  {  // Mixed-index correlation entries vanish: the FD Laplacian of
    // log|theta(U)|^2 at a generic point, step-doubled to kill the h^2 bias.
    CMatrix o(1, 1);
    o(0, 0) = Complex(0.0, 1.1);
    const PeriodMatrix pm = make_period_matrix(o);
    const Real x0 = 0.31, y0 = 0.17;
    auto f = [&](Real x, Real y) {
      CVector u(1);
      u(0) = Complex(x, y);
      return std::log(std::norm(theta(u, pm, 1e-14)));
    };
    const Real f0 = f(x0, y0);
    auto lap = [&](Real h) {
      return (f(x0 + h, y0) + f(x0 - h, y0) + f(x0, y0 + h) + f(x0, y0 - h) -
              4.0 * f0) /
             (h * h);
    };
    const Real mixed = 0.25 * std::abs((4.0 * lap(2e-3) - lap(4e-3)) / 3.0);
    out.push_back(
        make_check("corr-mixed-vanishing-fd", mixed, 0.0, mixed, 1e-8));
  }

  {  // The mixed Hessian of log bold_tau must not depend on Z.
    CMatrix o(1, 1);
    o(0, 0) = Complex(0.21, 1.13);
    const Complex zs[3] = {Complex(0.17, 0.23), Complex(-0.31, 0.11),
                           Complex(0.27, -0.19)};
    Complex first{};
    Real worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      CVector z(1);
      z(0) = zs[k];
      const GenusWardSecond rep =
          ward_genus_second(instanton_input_from_z(o, z), 0, 0, cfg.fd_step);
      if (k == 0) {
        first = rep.mixed_fd;
      } else {
        worst = std::max(worst, std::abs(rep.mixed_fd - first));
      }
    }
    out.push_back(make_check("bold-tau-mixed-constancy", std::abs(first),
                             std::abs(first), worst, 1e-6));
  }
  return out;
}

std::vector<CheckResult> verify_all(const ExteriorMap& map,
                                    const RunConfig& cfg) {
  std::vector<CheckResult> out = verify_map_suite(map, cfg);
  auto append = [&out](std::vector<CheckResult> more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  append(verify_moment_suite(map, cfg));
  append(verify_tau_suite(map, cfg));
  append(verify_ward_suite(map, cfg));
  append(verify_theta_suite(cfg));
  append(verify_genus_suite(cfg));
  return out;
}

}  // namespace taukit
