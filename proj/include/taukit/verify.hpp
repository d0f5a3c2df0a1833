#pragma once

#include <string>
#include <vector>

#include "taukit/exterior_map.hpp"
#include "taukit/types.hpp"

namespace taukit {

struct RunConfig {
  int samples = 4096;
  int grid_n = 200;
  Real fd_step = 1e-4;
  int order = 4;
  Real rho = 1.5;
  Real tol = 1e-8;
};

// InputError naming the violated invariant: samples a power of two >= 64,
// 1 < rho <= 4, tol > 0 (plus positivity of the remaining knobs).
void validate_config(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  Real lhs = 0.0;
  Real rhs = 0.0;
  Real residual = 0.0;
  Real tolerance = 0.0;
  bool pass = false;
};

CheckResult make_check(const std::string& name, Real lhs, Real rhs,
                       Real residual, Real tolerance);

bool all_pass(const std::vector<CheckResult>& checks);

// One suite per library module, mirroring that module's invariant list;
// verify_all concatenates them.  All randomness is fixed-seed, so identical
// config + input reproduce byte-identical reports.
std::vector<CheckResult> verify_map_suite(const ExteriorMap& map,
                                          const RunConfig& cfg);
std::vector<CheckResult> verify_moment_suite(const ExteriorMap& map,
                                             const RunConfig& cfg);
std::vector<CheckResult> verify_tau_suite(const ExteriorMap& map,
                                          const RunConfig& cfg);
std::vector<CheckResult> verify_ward_suite(const ExteriorMap& map,
                                           const RunConfig& cfg);
std::vector<CheckResult> verify_theta_suite(const RunConfig& cfg);
std::vector<CheckResult> verify_genus_suite(const RunConfig& cfg);
std::vector<CheckResult> verify_all(const ExteriorMap& map,
                                    const RunConfig& cfg);

}  // namespace taukit
