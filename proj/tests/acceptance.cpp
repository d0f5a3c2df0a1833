// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// nonzero if any failed.  Tolerances and parameters are fixed here on
// purpose; do not loosen them to make a run green.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "taukit/exterior_map.hpp"
#include "taukit/genus.hpp"
#include "taukit/io_json.hpp"
#include "taukit/tau.hpp"
#include "taukit/theta.hpp"
#include "taukit/ward.hpp"

using namespace taukit;

namespace {

int failures = 0;

void line(int id, bool ok, const std::string& detail) {
  std::printf("[%02d] %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ExteriorMap ellipse() {
  ExteriorMap m;
  m.coeffs = CVector::Zero(1);
  m.coeffs(0) = 0.3;
  return m;
}

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

CMatrix omega_g2() {
  CMatrix m(2, 2);
  m(0, 0) = Complex(0.2, 1.1);
  m(0, 1) = Complex(0.12, 0.06);
  m(1, 0) = Complex(0.12, 0.06);
  m(1, 1) = Complex(-0.15, 1.33);
  return m;
}

// deterministic generator for the random-input criteria
struct Rng {
  unsigned long long state;
  explicit Rng(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    state += 0x9e3779b97f4a7c15ULL;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  Real uniform(Real lo, Real hi) {
    return lo + (hi - lo) * (Real(next() >> 11) * 0x1.0p-53);
  }
};

CMatrix random_omega(Rng& rng, int g) {
  CMatrix m(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i == j) {
        m(i, i) = Complex(rng.uniform(-0.4, 0.4), rng.uniform(0.9, 1.7));
      } else {
        const Complex off(rng.uniform(-0.2, 0.2), rng.uniform(-0.15, 0.15));
        m(i, j) = off;
        m(j, i) = off;
      }
    }
  }
  return m;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

void criterion_1() {
  Real worst = 0.0, slowest = 0.0;
  for (const Real R : {0.6, 1.0, 1.7}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Real got = log_tau_boundary(ExteriorMap{R}, 4096).log_tau;
    slowest = std::max(slowest, seconds_since(t0));
    const Real a = R * R;  // normalized area coordinate of the disk
    const Real want = 0.5 * a * a * std::log(a) - 0.75 * a * a;
    worst = std::max(worst, std::abs(got - want));
  }
  line(1, worst <= 1e-8 && slowest < 1.0,
       fmt("disk closed form: max |defect| = %.3e (tol 1e-8), slowest run %.2fs "
           "(budget 1s)",
           worst, slowest));
}

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Real b = log_tau_boundary(ellipse(), 4096).log_tau;
  const Real g = log_tau_grid(ellipse(), 300).log_tau;
  const Real elapsed = seconds_since(t0);
  const Real rel = std::abs(b - g) / std::abs(g);
  line(2, rel <= 1e-3 && elapsed < 60.0,
       fmt("boundary vs grid oracle on the ellipse: rel gap %.3e (tol 1e-3), "
           "%.1fs (budget 60s)",
           rel, elapsed));
}

void criterion_3() {
  const WardFirstOrderReport rep = ward_first_order(three_coeff(), 4);
  auto family = [](Real s) {
    ExteriorMap m;
    m.coeffs = CVector::Zero(1);
    m.coeffs(0) = 0.2 + s;
    return m;
  };
  const ChainRuleReport chain = ward_chain_rule(family, 0.1);
  line(3, rep.max_residual <= 1e-4 && chain.residual <= 1e-6,
       fmt("first-order identity: max residual %.3e (tol 1e-4); chain rule "
           "%.3e (tol 1e-6)",
           rep.max_residual, chain.residual));
}

void criterion_4() {
  const ExteriorMap m = three_coeff(1.2);
  const HessianBlock block = hessian_block_fd(m, 2);
  const Real res = std::abs(block.t0t0 - 2.0 * std::log(1.2));
  line(4, res <= 1e-4,
       fmt("d2 log tau / dt0^2 vs 2 log r: residual %.3e (tol 1e-4)", res));
}

void criterion_5() {
  const ReconstructionReport rep = reconstruct_logG(ellipse(), 8, Complex(5, 0));
  line(5, rep.residual <= 1e-4,
       fmt("log G reconstruction at |z| = 5, K = 8: residual %.3e (tol 1e-4)",
           rep.residual));
}

void criterion_6() {
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 3);
  const CMatrix quad = schiffer_hessian_block(m, 3);
  Real gap = 0.0, sym = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      gap = std::max(gap, std::abs(block.holo(a, b) - quad(a, b)));
      sym = std::max(sym, std::abs(quad(a, b) - quad(b, a)));
    }
  }
  line(6, gap <= 1e-4 && sym <= 1e-10,
       fmt("holomorphic Hessian vs double quadrature: entry gap %.3e (tol "
           "1e-4), symmetry %.3e (tol 1e-10)",
           gap, sym));
}

void criterion_7() {
  const ExteriorMap m = three_coeff();
  const HessianBlock block = hessian_block_fd(m, 3);
  const CMatrix quad = bergman_hessian_block(m, 3, 1.5);
  Real gap = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      gap = std::max(gap, std::abs(block.mixed(a, b) - quad(a, b)));
  const CMatrix q13 = bergman_hessian_block(m, 3, 1.3);
  const CMatrix q20 = bergman_hessian_block(m, 3, 2.0);
  Real spread = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      spread = std::max(spread, std::abs(q13(a, b) - quad(a, b)));
      spread = std::max(spread, std::abs(q20(a, b) - quad(a, b)));
      spread = std::max(spread, std::abs(q13(a, b) - q20(a, b)));
    }
  }
  const MetricGram mg = metric_gram(m, 4, 1.5);
  line(7,
       gap <= 1e-4 && spread <= 1e-8 && mg.hermitian_defect <= 1e-10 &&
           mg.min_eigenvalue > 0.0,
       fmt("mixed Hessian vs reproducing kernel: gap %.3e (tol 1e-4), rho "
           "spread %.3e (tol 1e-8), gram defect %.3e, min eig %.3f > 0",
           gap, spread, mg.hermitian_defect, mg.min_eigenvalue));
}

void criterion_8() {
  const IntegratedIdentityReport rep =
      integrated_identities(ellipse(), Complex(6, 0), Complex(6, 0), 10);
  line(8, rep.residual_holo <= 1e-5 && rep.residual_mixed <= 1e-5,
       fmt("integrated identities at z = conj(w) = 6: holo %.3e, mixed %.3e "
           "(tol 1e-5)",
           rep.residual_holo, rep.residual_mixed));
}

void criterion_9() {
  const CMatrix d = duality_matrix(three_coeff(), 6, 4096);
  Real worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      worst = std::max(worst,
                       std::abs(d(a, b) - (a == b ? Complex(1) : Complex(0))));
  line(9, worst <= 1e-10,
       fmt("duality matrix vs identity, m,n <= 6: max gap %.3e (tol 1e-10)",
           worst));
}

void criterion_10() {
  const ExteriorMap m = three_coeff();
  const CVector eq = equilibrium_moments(m, 4);
  const HessianBlock block = hessian_block_fd(m, 4);
  Real worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    worst = std::max(worst, std::abs(eq(n) - block.t0_row(n - 1)));
  }
  line(10, worst <= 1e-4,
       fmt("log-derivative coefficients vs t0 Hessian row, n <= 4: max gap "
           "%.3e (tol 1e-4)",
           worst));
}

void criterion_11() {
  const PeriodMatrix p1 = make_period_matrix(
      (CMatrix(1, 1) << Complex(0.21, 1.13)).finished());
  const PeriodMatrix p2 = make_period_matrix(omega_g2());

  CVector z1(1);
  z1(0) = Complex(0.37, -0.41);
  CVector z2(2);
  z2 << Complex(0.3, 0.1), Complex(-0.2, 0.25);

  Real parity = std::abs(theta(z1, p1) - theta(CVector(-z1), p1));
  parity = std::max(parity, std::abs(theta(z2, p2) - theta(CVector(-z2), p2)));
  CVector shifted = z2;
  shifted(0) += 2.0;
  shifted(1) -= 1.0;
  const Real period = std::abs(theta(z2, p2) - theta(shifted, p2));

  const Real mod1 = modular_check(z1, p1).residual;
  const Real mod2 = modular_check(z2, p2).residual;

  Characteristics xi;
  xi.xi_a = RVector(2);
  xi.xi_a << 0.3, -0.45;
  xi.xi_b = RVector(2);
  xi.xi_b << 0.15, 0.7;
  const Complex pref = theta_char(xi, z2, p2, 1e-12);
  const Complex direct =
      theta_shifted_sum(z2, p2, xi.xi_a, xi.xi_b, IVector::Zero(2), 1e-12);
  const Real tworoute =
      std::abs(pref - direct) / std::max(1.0, std::abs(pref));

  Real deriv = 0.0;
  const Real h = 1e-5;
  for (int i = 0; i < 2; ++i) {
    IVector alpha = IVector::Zero(2);
    alpha(i) = 1;
    CVector up = z2, dn = z2;
    up(i) += h;
    dn(i) -= h;
    const Complex fd = (theta(up, p2, 1e-14) - theta(dn, p2, 1e-14)) / (2.0 * h);
    const Complex an = theta_deriv(z2, p2, alpha, 1e-14);
    deriv = std::max(deriv, std::abs(an - fd) / std::abs(an));
  }

  line(11,
       parity <= 1e-12 && period <= 1e-12 && mod1 <= 1e-10 && mod2 <= 1e-8 &&
           tworoute <= 1e-10 && deriv <= 1e-5,
       fmt("theta engine: parity %.2e / periodicity %.2e (tol 1e-12), modular "
           "g1 %.2e (1e-10) g2 %.2e (1e-8), two-route %.2e (1e-10), "
           "deriv-vs-FD %.2e (1e-5)",
           parity, period, mod1, mod2, tworoute, deriv));
}

void criterion_12() {
  Rng rng(20250819);
  Real worst_triple = 0.0, worst_reflect = 0.0;
  bool positive = true;
  std::string note;
  try {
    for (int draw = 0; draw < 10; ++draw) {
      const int g = 1 + draw % 2;
      const CMatrix omega = random_omega(rng, g);
      Characteristics xi;
      xi.xi_a = RVector(g);
      xi.xi_b = RVector(g);
      for (int i = 0; i < g; ++i) {
        xi.xi_a(i) = rng.uniform(-0.5, 0.5);
        xi.xi_b(i) = rng.uniform(-0.5, 0.5);
      }
      const InstantonInput in = make_instanton_input(omega, xi);
      const int window = recommended_window(in, 1e-8);
      const Complex prim = zinst_primitive(in, window);
      const Complex qa = zinst_qa(in, window);
      const Real closed = zinst_closed(in);
      const Real scale = std::max({std::abs(closed), std::abs(prim), 1e-30});
      worst_triple = std::max(
          worst_triple,
          std::max({std::abs(prim - qa), std::abs(prim - closed),
                    std::abs(qa - closed)}) /
              scale);
      const BoldTau bt = bold_tau(in);
      positive = positive && bt.value > 0.0;
      const InstantonInput neg = instanton_input_from_z(omega, CVector(-in.z));
      worst_reflect =
          std::max(worst_reflect,
                   std::abs(bold_tau(neg).log_value - bt.log_value));
    }
  } catch (const NumericsError& e) {
    note = std::string("; exception: ") + e.what();
    worst_triple = 1.0;
  }
  line(12,
       worst_triple <= 1e-6 && positive && worst_reflect <= 1e-10 && note.empty(),
       fmt("partition sum, 10 random draws g in {1,2}: triple gap %.3e (tol "
           "1e-6), positive %s, reflection %.3e (tol 1e-10)%s",
           worst_triple, positive ? "yes" : "NO", worst_reflect, note.c_str()));
}

void criterion_13() {
  const CMatrix omega = (CMatrix(1, 1) << Complex(0.21, 1.13)).finished();
  Characteristics xi;
  xi.xi_a = RVector::Constant(1, 0.31);
  xi.xi_b = RVector::Constant(1, -0.22);
  const InstantonInput base = make_instanton_input(omega, xi);

  Real first = ward_genus_first(base, 0).max_residual;
  const InstantonInput g2 = instanton_input_from_z(
      omega_g2(), (CVector(2) << Complex(0.27, -0.14), Complex(-0.33, 0.18))
                      .finished());
  first = std::max(first, ward_genus_first(g2, 0).max_residual);
  first = std::max(first, ward_genus_first(g2, 1).max_residual);

  // mixed block must not depend on where it is evaluated
  Rng rng(777);
  std::vector<Complex> mixed;
  Real magnitude = 0.0;
  int sign = 0;
  for (int k = 0; k < 5; ++k) {
    CVector z(1);
    z(0) = Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.45, 0.45));
    const GenusWardSecond rep =
        ward_genus_second(instanton_input_from_z(omega, z), 0, 0);
    mixed.push_back(rep.mixed_fd);
    magnitude = std::max(magnitude, rep.magnitude_residual);
    sign = rep.mixed_sign;
  }
  Complex mean = 0.0;
  for (const Complex& v : mixed) mean += v;
  mean /= Real(mixed.size());
  Real variance = 0.0;
  for (const Complex& v : mixed) variance += std::norm(v - mean);
  variance /= Real(mixed.size());

  // entries with one holomorphic and one anti-holomorphic leg vanish;
  // measured here as the Laplacian of log |theta|^2 off the divisor
  const PeriodMatrix pm =
      make_period_matrix((CMatrix(1, 1) << Complex(0, 1.1)).finished());
  auto f = [&](Complex u) {
    CVector z(1);
    z(0) = u;
    return std::log(std::norm(theta(z, pm, 1e-14)));
  };
  const Complex u0(0.31, 0.17);
  auto lap = [&](Real step) {
    return (f(u0 + step) + f(u0 - step) + f(u0 + Complex(0, step)) +
            f(u0 - Complex(0, step)) - 4.0 * f(u0)) /
           (step * step);
  };
  const Real h = 2e-3;
  const Real mixed_vanish = 0.25 * std::abs((4.0 * lap(h) - lap(2.0 * h)) / 3.0);

  line(13,
       first <= 1e-5 && variance <= 1e-6 && magnitude <= 1e-6 &&
           mixed_vanish <= 1e-8,
       fmt("derivative identities: first-order %.3e (tol 1e-5); mixed "
           "constancy variance %.3e (tol 1e-6), magnitude gap %.3e (tol 1e-6, "
           "sign %+d), mixed-vanishing %.3e (tol 1e-8)",
           first, variance, magnitude, sign, mixed_vanish));
}

void criterion_14() {
  const Complex tau(0.1, 1.5);
  const TorusGreen green = make_torus_green(tau);
  const Real lap = torus_mixed_laplacian(green, Complex(0.31, 0.27));
  const Real lap_gap = std::abs(lap + 1.0 / tau.imag());
  const FayReport fay = fay_torus_check(tau, Complex(0.31, 0.27), Complex(0, 0));
  line(14, lap_gap <= 1e-4 && fay.residual <= 1e-5 && fay.a_period <= 1e-8,
       fmt("torus Green data: Laplacian gap %.3e (tol 1e-4), bidifferential "
           "residual %.3e (tol 1e-5), a-period %.3e (tol 1e-8)",
           lap_gap, fay.residual, fay.a_period));
}

void criterion_15(double total_budget_s, std::chrono::steady_clock::time_point t0) {
  const std::string map_path = "/tmp/taukit-acceptance-map.json";
  {
    std::ofstream out(map_path);
    out << map_json(ellipse()).dump(2) << "\n";
  }
  const std::string r1 = "/tmp/taukit-acceptance-run1.json";
  const std::string r2 = "/tmp/taukit-acceptance-run2.json";
  const std::string cli = TAUKIT_CLI_PATH;
  const std::string cmd1 = cli + " verify-all " + map_path + " > " + r1;
  const std::string cmd2 = cli + " verify-all " + map_path + " > " + r2;
  const int s1 = std::system(cmd1.c_str());
  const int s2 = std::system(cmd2.c_str());
  std::string a, b;
  const bool read_ok = read_file(r1, a) && read_file(r2, b);
  const bool identical = read_ok && !a.empty() && a == b;
  const double elapsed = seconds_since(t0);
  line(15,
       s1 == 0 && s2 == 0 && identical && elapsed < total_budget_s,
       fmt("determinism: verify-all exit codes %d/%d, reports %s (%zu bytes); "
           "whole suite %.0fs (budget %.0fs)",
           s1, s2, identical ? "byte-identical" : "DIFFER", a.size(), elapsed,
           total_budget_s));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  criterion_13();
  criterion_14();
  criterion_15(600.0, t0);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 15 criteria passed\n");
  return 0;
}
