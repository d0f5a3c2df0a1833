#pragma once

#include <string>

#include "taukit/errors.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Contour defined analytically by the coefficients of the exterior map
// g(w) = r*w + b0 + sum_{k=1..N} b_k w^{-k}, univalent on |w| >= 1.
// The boundary curve is the image of the unit circle, traversed
// counterclockwise in sigma via w = e^{i sigma}.
struct ExteriorMap {
  Real r = 1.0;
  Complex b0{0.0, 0.0};
  CVector coeffs;  // b_1 .. b_N
  int order() const { return static_cast<int>(coeffs.size()); }
};

// Throws InputError naming the violated invariant (r > 0, finite entries).
void validate_map(const ExteriorMap& map);

// Same contour in a larger coefficient space (zero padding); used when a
// derivative in a high moment coordinate needs a bigger square system.
ExteriorMap pad_map(const ExteriorMap& map, int new_order);

Complex eval_g(const ExteriorMap& map, Complex w);        // requires |w| >= 1
Complex eval_g_prime(const ExteriorMap& map, Complex w);  // dg/dw

// Inverse map by damped Newton from the linearization seed, with a
// continuation fallback from a far point.  Exterior z only.
Complex eval_G(const ExteriorMap& map, Complex z, Real tol = 1e-13);
// dG/dz = 1 / g'(G(z)).
Complex eval_G_prime(const ExteriorMap& map, Complex z, Real tol = 1e-13);

// Uniform boundary samples z(sigma_k), z'(sigma_k), sigma_k = 2 pi k / M.
struct SampledContour {
  CVector z;
  CVector dz;  // d z / d sigma
  int samples() const { return static_cast<int>(z.size()); }
  // Quadrature guard band: points closer to the polygon than this are
  // unreliable for singular-kernel evaluation.
  Real guard_band() const;
};

// M must be a power of two, M >= 64.
SampledContour sample(const ExteriorMap& map, int M);

struct UnivalenceReport {
  bool ok = true;
  std::string failure;  // names the first failing criterion
};

// Sampled check: g' != 0 on the grid, no polygon self-intersection,
// winding about 0 equal to +1.
UnivalenceReport check_univalent(const ExteriorMap& map, int M = 4096);
void require_univalent(const ExteriorMap& map, int M = 4096);  // UnivalenceLost

enum class Location { Interior, Exterior, NearBoundary };

// Signed winding number of the sampled polygon about p (crossing count).
int winding_number(const SampledContour& c, Complex p);
// Distance from p to the sampled polygon (segments, not just vertices).
Real boundary_distance(const SampledContour& c, Complex p);
Location point_location(const SampledContour& c, Complex p);

// Enclosed area pi*(r^2 - sum k |b_k|^2); NonpositiveArea if that fails.
Real area(const ExteriorMap& map);
// Boundary quadrature (1/2i) oint conj(z) dz for cross-checks.
Real area_quadrature(const SampledContour& c);

// Polynomial part (in w) of the finite Laurent expansion of g^n.
struct FaberPolynomial {
  int degree = 0;
  CVector c;  // c_0 .. c_degree
};
FaberPolynomial faber(const ExteriorMap& map, int n);
Complex eval_poly(const FaberPolynomial& p, Complex w);
Complex eval_poly_prime(const FaberPolynomial& p, Complex w);

// Constant Laurent coefficient of g^n (exact product).
Complex laurent_constant_term(const ExteriorMap& map, int n);

// Values per unit d sigma of the n-th deformation form along the contour:
// d/dsigma of F_n(e^{i sigma}) for n >= 1, the constant i for n = 0.
CVector deformation_form(const ExteriorMap& map, int n, const SampledContour& c);

// D[m-1][n-1] = (1/2 pi i) oint z^{-m}/m * (n-th deformation form),
// m, n = 1..nmax; equals the identity for a univalent truncated map.
CMatrix duality_matrix(const ExteriorMap& map, int nmax, int M);

// Max relative gap between dz and the FFT spectral derivative of z.
Real spectral_consistency(const SampledContour& c);

}  // namespace taukit
