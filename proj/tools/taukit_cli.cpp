#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "taukit/errors.hpp"
#include "taukit/genus.hpp"
#include "taukit/io_json.hpp"
#include "taukit/kernels.hpp"
#include "taukit/moments.hpp"
#include "taukit/svg.hpp"
#include "taukit/tau.hpp"
#include "taukit/theta.hpp"
#include "taukit/verify.hpp"
#include "taukit/ward.hpp"

namespace {

using taukit::CheckResult;
using taukit::Complex;
using taukit::OrderedJson;
using taukit::Real;

struct Session {
  taukit::RunConfig cfg;
  std::string format = "json";
  std::string svg_path;
  std::string input;
};

OrderedJson config_json(const Session& s) {
  OrderedJson j;
  j["samples"] = s.cfg.samples;
  j["grid_n"] = s.cfg.grid_n;
  j["fd_step"] = s.cfg.fd_step;
  j["order"] = s.cfg.order;
  j["rho"] = s.cfg.rho;
  j["tol"] = s.cfg.tol;
  j["format"] = s.format;
  j["input"] = s.input;
  return j;
}

OrderedJson checks_json(const std::vector<CheckResult>& checks) {
  auto arr = OrderedJson::array();
  for (const auto& c : checks) {
    OrderedJson j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    arr.push_back(j);
  }
  return arr;
}

void flatten_json(const OrderedJson& j, const std::string& prefix,
                  std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                   out);
    }
  } else if (j.is_array()) {
    for (size_t k = 0; k < j.size(); ++k) {
      flatten_json(j[k], prefix + "[" + std::to_string(k) + "]", out);
    }
  } else {
    out += prefix;
    out += ",";
    out += j.dump();
    out += "\n";
  }
}

// JSON is the report of record; CSV projects the residual table (or, for
// commands without checks, the flattened scalars).
void print_report(const Session& s, OrderedJson& report,
                  const std::vector<CheckResult>& checks) {
  report["checks"] = checks_json(checks);
  report["pass"] = taukit::all_pass(checks);
  if (s.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  if (!checks.empty()) {
    std::string out = "name,lhs,rhs,residual,tolerance,pass\n";
    for (const auto& c : checks) {
      out += c.name + "," + taukit::format_real(c.lhs) + "," +
             taukit::format_real(c.rhs) + "," + taukit::format_real(c.residual) +
             "," + taukit::format_real(c.tolerance) + "," +
             (c.pass ? "true" : "false") + "\n";
    }
    std::cout << out;
  } else {
    std::string out = "name,value\n";
    flatten_json(report, "", out);
    std::cout << out;
  }
}

int finish(const Session& s, OrderedJson& report,
           const std::vector<CheckResult>& checks) {
  print_report(s, report, checks);
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.pass) {
      ok = false;
      std::cerr << "FAIL " << c.name << ": residual " << c.residual
                << " exceeds " << c.tolerance << "\n";
    }
  }
  return ok ? 0 : 1;
}

taukit::ExteriorMap load_map(const Session& s) {
  taukit::ExteriorMap map = taukit::parse_map(taukit::load_json_file(s.input));
  try {
    taukit::require_univalent(map, std::min(s.cfg.samples, 4096));
  } catch (const taukit::NumericsError& e) {
    // a user-supplied map violating the univalence invariant is bad input
    throw taukit::InputError(e.what());
  }
  if (!s.svg_path.empty()) {
    taukit::emit_svg(taukit::sample(map, s.cfg.samples), s.svg_path);
  }
  return map;
}

struct ThetaInput {
  taukit::CMatrix omega;
  bool has_xi = false;
  taukit::Characteristics xi;
  bool has_z = false;
  taukit::CVector z;
};

ThetaInput load_theta(const Session& s) {
  const OrderedJson j = taukit::load_json_file(s.input);
  if (!j.is_object() || !j.contains("Omega")) {
    throw taukit::InputError("theta input: Omega matrix is required");
  }
  ThetaInput in;
  in.omega = taukit::parse_cmatrix(j.at("Omega"), "theta input: Omega");
  const int g = static_cast<int>(in.omega.rows());
  if (j.contains("xi_a") || j.contains("xi_b")) {
    in.has_xi = true;
    in.xi.xi_a = j.contains("xi_a")
                     ? taukit::parse_rvector(j.at("xi_a"), "theta input: xi_a")
                     : taukit::RVector::Zero(g);
    in.xi.xi_b = j.contains("xi_b")
                     ? taukit::parse_rvector(j.at("xi_b"), "theta input: xi_b")
                     : taukit::RVector::Zero(g);
  } else {
    in.xi.xi_a = taukit::RVector::Zero(g);
    in.xi.xi_b = taukit::RVector::Zero(g);
  }
  if (j.contains("Z")) {
    in.has_z = true;
    in.z = taukit::parse_cvector(j.at("Z"), "theta input: Z");
  } else {
    in.z = taukit::CVector::Zero(g);
  }
  return in;
}

taukit::InstantonInput instanton_from(const ThetaInput& in) {
  if (in.has_z && !in.has_xi) {
    return taukit::instanton_input_from_z(in.omega, in.z);
  }
  return taukit::make_instanton_input(in.omega, in.xi);
}

OrderedJson tau_report_json(const taukit::TauReport& rep) {
  OrderedJson j;
  j["log_tau"] = rep.log_tau;
  j["method"] =
      rep.method == taukit::TauMethod::BoundaryReduced ? "boundary" : "grid";
  j["energy_E"] = rep.energy_E;
  j["log_term_L"] = rep.log_term_L;
  j["area"] = rep.area;
  j["resolution"] = rep.resolution;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Contour tau-function, kernel, and theta-identity verification tool"};
  app.require_subcommand(1);
  app.fallthrough();

  Session s;
  app.add_option("--samples", s.cfg.samples,
                 "boundary samples M (power of two >= 64)");
  app.add_option("--grid", s.cfg.grid_n, "oracle grid resolution");
  app.add_option("--fd-step", s.cfg.fd_step, "finite-difference step");
  app.add_option("--order", s.cfg.order, "moment/Hessian order N");
  app.add_option("--rho", s.cfg.rho, "outer circle radius (1 < rho <= 4)");
  app.add_option("--tol", s.cfg.tol, "series / solver tolerance");
  app.add_option("--format", s.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--svg", s.svg_path, "write the contour as SVG to this path");

  auto* c_info = app.add_subcommand("info", "map summary: area, t0, b_{-1}");
  auto* c_tau = app.add_subcommand("tau", "log tau of the contour");
  auto* c_moments = app.add_subcommand("moments", "exterior and interior moments");
  auto* c_faber = app.add_subcommand("faber", "Faber polynomial and duality");
  auto* c_invert =
      app.add_subcommand("invert-moments", "solve a map from moments");
  auto* c_ward1 = app.add_subcommand("ward1", "first-order moment derivatives");
  auto* c_hessian =
      app.add_subcommand("hessian", "FD Hessian vs kernel quadratures");
  auto* c_recon = app.add_subcommand("reconstruct-g",
                                     "rebuild log G from the Hessian t0 row");
  auto* c_metric = app.add_subcommand("metric", "moment-space metric gram");
  auto* c_ident =
      app.add_subcommand("identities", "integrated kernel identities");
  auto* c_theta = app.add_subcommand("theta", "theta values and modular check");
  auto* c_zinst = app.add_subcommand("zinst", "instanton sums, three routes");
  auto* c_wgenus =
      app.add_subcommand("ward-genus", "theta-side Ward identities");
  auto* c_fay = app.add_subcommand("fay-torus", "torus Green/Fay checks");
  auto* c_verify = app.add_subcommand("verify-all", "every module's invariants");

  for (auto* cmd : {c_info, c_tau, c_moments, c_faber, c_ward1, c_hessian,
                    c_recon, c_metric, c_ident, c_verify}) {
    cmd->add_option("input", s.input, "contour map JSON file")->required();
  }
  for (auto* cmd : {c_invert, c_theta, c_zinst, c_wgenus}) {
    cmd->add_option("input", s.input, "input JSON file")->required();
  }
  c_fay->add_option("input", s.input, "JSON file with tau, z, w");

  std::string tau_method = "boundary";
  c_tau->add_option("--method", tau_method, "boundary, grid, or both")
      ->check(CLI::IsMember({"boundary", "grid", "both"}));
  int faber_n = -1;
  c_faber->add_option("--n", faber_n, "polynomial index (default: order)");
  std::string seed_path;
  c_invert->add_option("--seed", seed_path, "seed map JSON file");
  int terms = -1;
  c_recon->add_option("--terms", terms, "series length K (default 8)");
  c_ident->add_option("--terms", terms, "series length K (default 10)");
  Real zx = 0.0, zy = 0.0, wx = 0.0, wy = 0.0;
  auto* zre_r = c_recon->add_option("--z-re", zx, "evaluation point, real part");
  c_recon->add_option("--z-im", zy, "evaluation point, imaginary part");
  auto* zre_i = c_ident->add_option("--z-re", zx, "first point, real part");
  c_ident->add_option("--z-im", zy, "first point, imaginary part");
  auto* wre_i = c_ident->add_option("--w-re", wx, "second point, real part");
  c_ident->add_option("--w-im", wy, "second point, imaginary part");
  int gi = 0, gj = 0;
  c_wgenus->add_option("--i", gi, "first index");
  c_wgenus->add_option("--j", gj, "second index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<CheckResult> checks;
  OrderedJson report;
  try {
    taukit::validate_config(s.cfg);
    report["command"] = app.get_subcommands().front()->get_name();
    report["config"] = config_json(s);

    if (c_info->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      report["map"] = taukit::map_json(map);
      report["area"] = taukit::area(map);
      const taukit::MomentSet mo =
          taukit::exterior_moments(map, s.cfg.order, s.cfg.samples);
      report["t0"] = mo.t0;
      report["t"] = taukit::cvector_json(mo.t);
      report["b_minus_1"] = 1.0 / map.r;
      report["transfinite_diameter"] = map.r;
    } else if (c_tau->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      taukit::TauReport boundary, grid;
      if (tau_method != "grid") {
        boundary = taukit::log_tau_boundary(map, s.cfg.samples);
        report["boundary"] = tau_report_json(boundary);
        report["log_tau"] = boundary.log_tau;
      }
      if (tau_method != "boundary") {
        grid = taukit::log_tau_grid(map, s.cfg.grid_n, s.cfg.samples);
        report["grid"] = tau_report_json(grid);
        if (tau_method == "grid") report["log_tau"] = grid.log_tau;
      }
      if (tau_method == "both") {
        const Real res =
            std::abs(boundary.log_tau - grid.log_tau) / std::abs(grid.log_tau);
        const Real scale = std::max(1.0, 300.0 / s.cfg.grid_n);
        checks.push_back(taukit::make_check("tau-two-route-agreement",
                                            boundary.log_tau, grid.log_tau, res,
                                            1e-3 * scale * scale));
      }
    } else if (c_moments->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const taukit::MomentSet mo =
          taukit::exterior_moments(map, s.cfg.order, s.cfg.samples);
      const taukit::InteriorMoments im =
          taukit::interior_moments(map, s.cfg.order, s.cfg.samples);
      report["t0"] = mo.t0;
      report["t"] = taukit::cvector_json(mo.t);
      report["v0"] = im.v0;
      report["v"] = taukit::cvector_json(im.v);
    } else if (c_faber->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const int n = faber_n > 0 ? faber_n : s.cfg.order;
      const taukit::FaberPolynomial f = taukit::faber(map, n);
      report["n"] = n;
      report["degree"] = f.degree;
      report["coefficients"] = taukit::cvector_json(f.c);
      const int nmax = std::min(s.cfg.order + 2, 8);
      const taukit::CMatrix d =
          taukit::duality_matrix(map, nmax, s.cfg.samples);
      Real worst = 0.0;
      for (int a = 0; a < nmax; ++a)
        for (int b = 0; b < nmax; ++b)
          worst = std::max(
              worst, std::abs(d(a, b) - (a == b ? Complex(1) : Complex(0))));
      checks.push_back(
          taukit::make_check("faber-duality-identity", worst, 0.0, worst, 1e-10));
    } else if (c_invert->parsed()) {
      const taukit::MomentSet target =
          taukit::parse_moments(taukit::load_json_file(s.input));
      taukit::ExteriorMap seed;
      if (!seed_path.empty()) {
        seed = taukit::parse_map(taukit::load_json_file(seed_path));
      } else {
        seed.r = std::sqrt(target.t0);
        seed.coeffs = taukit::CVector::Zero(std::max(0, target.count() - 1));
      }
      const taukit::ExteriorMap solved =
          taukit::map_from_moments(target, seed, 1e-12, s.cfg.samples);
      report["map"] = taukit::map_json(solved);
      const taukit::MomentSet got =
          taukit::exterior_moments(solved, target.count(), s.cfg.samples);
      Real worst = std::abs(got.t0 - target.t0);
      for (int k = 0; k < target.count(); ++k)
        worst = std::max(worst, std::abs(got.t[k] - target.t[k]));
      checks.push_back(
          taukit::make_check("invert-roundtrip", worst, 0.0, worst, 1e-10));
      if (!s.svg_path.empty())
        taukit::emit_svg(taukit::sample(solved, s.cfg.samples), s.svg_path);
    } else if (c_ward1->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const taukit::WardFirstOrderReport rep = taukit::ward_first_order(
          map, s.cfg.order, s.cfg.fd_step, s.cfg.samples);
      report["v0"] = rep.v0;
      report["v0_fd"] = rep.v0_fd;
      report["v"] = taukit::cvector_json(rep.vn);
      report["fd"] = taukit::cvector_json(rep.fd);
      checks.push_back(taukit::make_check("ward-first-order", rep.v0_fd, rep.v0,
                                          rep.max_residual, 1e-4));
    } else if (c_hessian->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const int K = s.cfg.order;
      const taukit::HessianBlock block =
          taukit::hessian_block_fd(map, K, s.cfg.fd_step, s.cfg.samples);
      const taukit::CMatrix sch =
          taukit::schiffer_hessian_block(map, K, s.cfg.samples);
      const taukit::CMatrix ber =
          taukit::bergman_hessian_block(map, K, s.cfg.rho, s.cfg.samples);
      report["holo_fd"] = taukit::cmatrix_json(block.holo);
      report["holo_quadrature"] = taukit::cmatrix_json(sch);
      report["mixed_fd"] = taukit::cmatrix_json(block.mixed);
      report["mixed_quadrature"] = taukit::cmatrix_json(ber);
      report["t0_row"] = taukit::cvector_json(block.t0_row);
      report["t0t0"] = block.t0t0;
      report["richardson_gap"] = block.richardson_gap;
      Real holo = 0.0, mixed = 0.0, sym = 0.0, herm = 0.0;
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
          holo = std::max(holo, std::abs(block.holo(a, b) - sch(a, b)));
          mixed = std::max(mixed, std::abs(block.mixed(a, b) - ber(a, b)));
          sym = std::max(sym, std::abs(sch(a, b) - sch(b, a)));
          herm = std::max(herm, std::abs(ber(a, b) - std::conj(ber(b, a))));
        }
      }
      checks.push_back(
          taukit::make_check("hessian-fd-vs-schiffer", holo, 0.0, holo, 1e-4));
      checks.push_back(
          taukit::make_check("hessian-fd-vs-bergman", mixed, 0.0, mixed, 1e-4));
      checks.push_back(
          taukit::make_check("hessian-quad-symmetry", sym, 0.0, sym, 1e-10));
      checks.push_back(
          taukit::make_check("hessian-quad-hermiticity", herm, 0.0, herm, 1e-10));
      checks.push_back(taukit::make_check("hessian-t0t0-vs-2logr", block.t0t0,
                                          2.0 * std::log(map.r),
                                          std::abs(block.t0t0 - 2.0 * std::log(map.r)),
                                          1e-4));
      checks.push_back(taukit::make_check("hessian-richardson-gap",
                                          block.richardson_gap, 0.0,
                                          block.richardson_gap, 1e-3));
    } else if (c_recon->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const int K = terms > 0 ? terms : 8;
      const Complex z =
          zre_r->count() > 0 ? Complex(zx, zy) : Complex(5.0, 0.0);
      const taukit::ReconstructionReport rep = taukit::reconstruct_logG(
          map, K, z, s.cfg.fd_step, s.cfg.samples);
      report["z"] = taukit::complex_json(z);
      report["terms"] = K;
      report["reconstructed"] = taukit::complex_json(rep.reconstructed);
      report["direct"] = taukit::complex_json(rep.direct);
      report["last_term"] = rep.last_term;
      checks.push_back(taukit::make_check("reconstruct-logG",
                                          std::abs(rep.reconstructed),
                                          std::abs(rep.direct), rep.residual,
                                          1e-4));
    } else if (c_metric->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const taukit::MetricGram mg =
          taukit::metric_gram(map, s.cfg.order, s.cfg.rho, s.cfg.samples);
      report["h"] = taukit::cmatrix_json(mg.h);
      report["min_eigenvalue"] = mg.min_eigenvalue;
      report["hermitian_defect"] = mg.hermitian_defect;
      checks.push_back(taukit::make_check("metric-hermitian-defect",
                                          mg.hermitian_defect, 0.0,
                                          mg.hermitian_defect, 1e-10));
      checks.push_back(taukit::make_check(
          "metric-min-eigenvalue-positive", mg.min_eigenvalue, 0.0,
          mg.min_eigenvalue > 0.0 ? 0.0 : 1.0, 0.5));
    } else if (c_ident->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      const int K = terms > 0 ? terms : 10;
      const Complex z =
          zre_i->count() > 0 ? Complex(zx, zy) : Complex(6.0, 0.0);
      const Complex w =
          wre_i->count() > 0 ? Complex(wx, wy) : Complex(6.0, 0.0);
      const taukit::IntegratedIdentityReport rep = taukit::integrated_identities(
          map, z, w, K, s.cfg.samples, s.cfg.rho);
      report["z"] = taukit::complex_json(z);
      report["w"] = taukit::complex_json(w);
      report["terms"] = K;
      report["lhs_holo"] = taukit::complex_json(rep.lhs_holo);
      report["rhs_holo"] = taukit::complex_json(rep.rhs_holo);
      report["lhs_mixed"] = taukit::complex_json(rep.lhs_mixed);
      report["rhs_mixed"] = taukit::complex_json(rep.rhs_mixed);
      checks.push_back(taukit::make_check("integrated-holo",
                                          std::abs(rep.lhs_holo),
                                          std::abs(rep.rhs_holo),
                                          rep.residual_holo, 1e-5));
      checks.push_back(taukit::make_check("integrated-mixed",
                                          std::abs(rep.lhs_mixed),
                                          std::abs(rep.rhs_mixed),
                                          rep.residual_mixed, 1e-5));
    } else if (c_theta->parsed()) {
      const ThetaInput in = load_theta(s);
      const taukit::PeriodMatrix pm = taukit::make_period_matrix(in.omega);
      const Complex value = taukit::theta(in.z, pm, s.cfg.tol * 1e-4);
      report["genus"] = pm.g;
      report["theta"] = taukit::complex_json(value);
      if (in.has_xi) {
        report["theta_char"] = taukit::complex_json(
            taukit::theta_char(in.xi, in.z, pm, s.cfg.tol * 1e-4));
      }
      auto grad = OrderedJson::array();
      for (int i = 0; i < pm.g; ++i) {
        taukit::IVector alpha = taukit::IVector::Zero(pm.g);
        alpha(i) = 1;
        grad.push_back(taukit::complex_json(
            taukit::theta_deriv(in.z, pm, alpha, s.cfg.tol * 1e-4)));
      }
      report["gradient"] = grad;
      const taukit::ModularReport mod = taukit::modular_check(in.z, pm);
      report["modular_lhs"] = taukit::complex_json(mod.lhs);
      report["modular_rhs"] = taukit::complex_json(mod.rhs);
      checks.push_back(taukit::make_check("theta-modular", std::abs(mod.lhs),
                                          std::abs(mod.rhs), mod.residual,
                                          pm.g == 1 ? 1e-10 : 1e-8));
    } else if (c_zinst->parsed()) {
      const ThetaInput in = load_theta(s);
      const taukit::InstantonInput input = instanton_from(in);
      const int window = taukit::recommended_window(input, s.cfg.tol);
      const Complex prim = taukit::zinst_primitive(input, window, s.cfg.tol);
      const Complex qa = taukit::zinst_qa(input, window, s.cfg.tol);
      const Real closed = taukit::zinst_closed(input);
      const taukit::BoldTau bt = taukit::bold_tau(input);
      report["window"] = window;
      report["tail_bound"] = taukit::instanton_tail_bound(input, window);
      report["primitive"] = taukit::complex_json(prim);
      report["qa"] = taukit::complex_json(qa);
      report["closed"] = closed;
      report["bold_tau"] = bt.value;
      report["log_bold_tau"] = bt.log_value;
      const Real scale = std::max({std::abs(closed), std::abs(prim), 1e-30});
      const Real res = std::max({std::abs(prim - qa), std::abs(prim - closed),
                                 std::abs(qa - closed)}) /
                       scale;
      checks.push_back(
          taukit::make_check("zinst-triple-agreement", prim.real(), closed, res,
                             1e-6));
      checks.push_back(taukit::make_check("bold-tau-positive", bt.value, 0.0,
                                          bt.value > 0.0 ? 0.0 : 1.0, 0.5));
    } else if (c_wgenus->parsed()) {
      const ThetaInput in = load_theta(s);
      const taukit::InstantonInput input = instanton_from(in);
      const taukit::GenusWardFirst first =
          taukit::ward_genus_first(input, gi, s.cfg.fd_step);
      const taukit::GenusWardSecond second =
          taukit::ward_genus_second(input, gi, gj, s.cfg.fd_step);
      report["i"] = gi;
      report["j"] = gj;
      report["first_fd"] = taukit::complex_json(first.fd);
      report["first_analytic"] = taukit::complex_json(first.analytic);
      report["first_char_route"] = taukit::complex_json(first.char_route);
      report["second_holo_fd"] = taukit::complex_json(second.holo_fd);
      report["second_holo_analytic"] =
          taukit::complex_json(second.holo_analytic);
      report["second_mixed_fd"] = taukit::complex_json(second.mixed_fd);
      report["y_ij"] = second.y_ij;
      report["mixed_sign"] = second.mixed_sign;
      checks.push_back(taukit::make_check("ward-genus-first", std::abs(first.fd),
                                          std::abs(first.analytic),
                                          first.max_residual, 1e-5));
      checks.push_back(taukit::make_check(
          "ward-genus-second-holo", std::abs(second.holo_fd),
          std::abs(second.holo_analytic), second.holo_residual, 1e-5));
      checks.push_back(taukit::make_check(
          "ward-genus-mixed-magnitude", std::abs(second.mixed_fd),
          taukit::kPi * std::abs(second.y_ij), second.magnitude_residual, 1e-6));
    } else if (c_fay->parsed()) {
      Complex tau(0.1, 1.5), fz(0.31, 0.27), fw(0.0, 0.0);
      if (!s.input.empty()) {
        const OrderedJson j = taukit::load_json_file(s.input);
        if (j.contains("tau")) tau = taukit::parse_complex(j.at("tau"), "fay input: tau");
        if (j.contains("z")) fz = taukit::parse_complex(j.at("z"), "fay input: z");
        if (j.contains("w")) fw = taukit::parse_complex(j.at("w"), "fay input: w");
      }
      const taukit::FayReport rep =
          taukit::fay_torus_check(tau, fz, fw, 256, s.cfg.fd_step);
      const taukit::TorusGreen green = taukit::make_torus_green(tau);
      const Real lap = taukit::torus_mixed_laplacian(green, fz - fw, s.cfg.fd_step);
      const Real want = -1.0 / tau.imag();
      report["tau"] = taukit::complex_json(tau);
      report["z"] = taukit::complex_json(fz);
      report["w"] = taukit::complex_json(fw);
      report["b_theta"] = taukit::complex_json(rep.b_theta);
      report["b_green"] = taukit::complex_json(rep.b_green);
      report["green_constant"] = green.c;
      checks.push_back(taukit::make_check("fay-b-agreement",
                                          std::abs(rep.b_theta),
                                          std::abs(rep.b_green), rep.residual,
                                          1e-5));
      checks.push_back(taukit::make_check("fay-a-period", rep.a_period, 0.0,
                                          rep.a_period, 1e-8));
      checks.push_back(taukit::make_check("torus-mixed-laplacian", lap, want,
                                          std::abs(lap - want), 1e-4));
    } else if (c_verify->parsed()) {
      const taukit::ExteriorMap map = load_map(s);
      checks = taukit::verify_all(map, s.cfg);
    }
  } catch (const taukit::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const taukit::NumericsError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  return finish(s, report, checks);
}
