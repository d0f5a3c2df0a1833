#pragma once

#include "taukit/exterior_map.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Symmetric second-kind kernel of the exterior domain,
// S(z,w) = G'(z) G'(w) / (G(z) - G(w))^2, coefficient of dz (x) dw.
Complex schiffer_kernel_ext(const ExteriorMap& map, Complex z, Complex w);

// Reproducing kernel of the exterior domain,
// K(z, conj(w)) = G'(z) conj(G'(w)) / (pi (1 - G(z) conj(G(w)))^2),
// coefficient of dz (x) conj(dw).
Complex bergman_kernel_ext(const ExteriorMap& map, Complex z, Complex w);

// Truncated orthonormal-series evaluation of the same kernel,
// sum_{n=1..terms} u_n(z) conj(u_n(w)), u_n = sqrt(n/pi) G^{-n-1} G'.
Complex bergman_series(const ExteriorMap& map, Complex z, Complex w, int terms);

// Green's function of the exterior domain with Dirichlet data,
// (2/pi) log |(1 - G(z) conj(G(w))) / (G(z) - G(w))|.
Real green_dbc(const ExteriorMap& map, Complex z, Complex w);

}  // namespace taukit
