#pragma once

#include "taukit/exterior_map.hpp"
#include "taukit/types.hpp"

namespace taukit {

// Exterior harmonic moments: t0 = area/pi (real), t[n-1] = t_n =
// (1/2 pi i n) oint z^{-n} conj(z) dz.  Coordinates on contour space.
struct MomentSet {
  Real t0 = 0.0;
  CVector t;  // t_1 .. t_N
  int count() const { return static_cast<int>(t.size()); }
};

// Interior moments: v[n-1] = v_n = (1/2 pi i) oint z^n conj(z) dz and
// v0 = (2/pi) * integral of log|z| over the interior.
struct InteriorMoments {
  Real v0 = 0.0;
  CVector v;  // v_1 .. v_K
};

MomentSet exterior_moments(const ExteriorMap& map, int N, int M = 4096);
InteriorMoments interior_moments(const ExteriorMap& map, int K, int M = 4096);

// Cauchy transform S(z) = (1/2 pi i) oint conj(w)/(w - z) dw evaluated for z
// strictly on the requested side of the contour.
Complex cauchy_pair(const SampledContour& c, Complex z, Location side);

// Inverts the moment map by damped Newton with a finite-difference Jacobian.
// target must carry t_1..t_{N+1} where N = seed.order(); unknowns are
// (r, b_0..b_N).  Each iterate is kept univalent.
ExteriorMap map_from_moments(const MomentSet& target, const ExteriorMap& seed,
                             Real tol = 1e-12, int M = 4096, int max_iter = 60);

}  // namespace taukit
