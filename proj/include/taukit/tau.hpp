#pragma once

#include <string>

#include "taukit/exterior_map.hpp"
#include "taukit/types.hpp"

namespace taukit {

enum class TauMethod { BoundaryReduced, GridOracle };

// log tau = -(1/pi^2) (E - 2 A L) with E the interior log self-energy
// (double integral of log|z-w|) and L the interior integral of log|z|.
struct TauReport {
  Real log_tau = 0.0;
  TauMethod method = TauMethod::BoundaryReduced;
  Real energy_E = 0.0;
  Real log_term_L = 0.0;
  Real area = 0.0;
  int resolution = 0;  // M for boundary, grid_n for grid
};

// Spectral double-boundary quadrature on two half-step-offset grids; the
// energy integrand extends continuously by zero to the diagonal.
TauReport log_tau_boundary(const ExteriorMap& map, int M = 4096);

// First-order midpoint-cell oracle: cells classified by winding number,
// inter-cell log distances plus the exact square-cell self-energy.
TauReport log_tau_grid(const ExteriorMap& map, int grid_n, int M_classify = 4096);

// Exact log self-energy of the unit square, (ln 2 + pi - 25/4)/3.
inline constexpr Real kUnitSquareSelfEnergy = -0.80508672195008715;

// |E(outer grid, inner grid) - E(swapped)|: the kernel is symmetric, so this
// isolates floating-point summation-order noise in the double quadrature.
Real energy_swap_defect(const ExteriorMap& map, int M = 4096);

// Logarithmic potential of the interior pseudo-measure,
// Phi(z) = (2A/pi) log|z| - (2/pi) * integral of log|z-w| over the interior,
// evaluated by boundary reduction; decays to zero at infinity.
Real potential_phi(const ExteriorMap& map, Complex z, int M = 4096);

// dPhi/dz: boundary-reduced derivative; equals t0/z + Cauchy transform.
Complex current_1pt(const ExteriorMap& map, Complex z, int M = 4096);

}  // namespace taukit
