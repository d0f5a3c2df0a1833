#include "taukit/moments.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>

namespace taukit {

namespace {

// Pack/unpack the real Newton unknowns (r, Re b0, Im b0, ..., Re bN, Im bN).
RVector pack(const ExteriorMap& m) {
  RVector x(2 * m.order() + 3);
  x[0] = m.r;
  x[1] = m.b0.real();
  x[2] = m.b0.imag();
  for (int k = 0; k < m.order(); ++k) {
    x[3 + 2 * k] = m.coeffs[k].real();
    x[4 + 2 * k] = m.coeffs[k].imag();
  }
  return x;
}

ExteriorMap unpack(const RVector& x, int N) {
  ExteriorMap m;
  m.r = x[0];
  m.b0 = Complex(x[1], x[2]);
  m.coeffs.resize(N);
  for (int k = 0; k < N; ++k) m.coeffs[k] = Complex(x[3 + 2 * k], x[4 + 2 * k]);
  return m;
}

// Real residual vector (t0, Re t1, Im t1, ...) minus target.
RVector moment_residual(const ExteriorMap& m, const MomentSet& target, int M) {
  MomentSet cur = exterior_moments(m, target.count(), M);
  RVector f(2 * target.count() + 1);
  f[0] = cur.t0 - target.t0;
  for (int n = 0; n < target.count(); ++n) {
    Complex d = cur.t[n] - target.t[n];
    f[1 + 2 * n] = d.real();
    f[2 + 2 * n] = d.imag();
  }
  return f;
}

}  // namespace

MomentSet exterior_moments(const ExteriorMap& map, int N, int M) {
  if (N < 0) throw InputError("exterior_moments: N must be >= 0");
  SampledContour c = sample(map, M);
  MomentSet out;
  out.t0 = area(map) / kPi;
  out.t.resize(N);
  if (N == 0) return out;
  // t_n = (1/(i n M)) sum z^{-n} conj(z) z'
  std::vector<KahanSum<Complex>> acc(N);
  for (int k = 0; k < M; ++k) {
    Complex zi = 1.0 / c.z[k];
    Complex base = std::conj(c.z[k]) * c.dz[k];
    Complex p = zi;
    for (int n = 1; n <= N; ++n) {
      acc[n - 1].add(base * p);
      p *= zi;
    }
  }
  for (int n = 1; n <= N; ++n)
    out.t[n - 1] = acc[n - 1].value() / (kI * Real(n) * Real(M));
  return out;
}

InteriorMoments interior_moments(const ExteriorMap& map, int K, int M) {
  if (K < 0) throw InputError("interior_moments: K must be >= 0");
  SampledContour c = sample(map, M);
  if (winding_number(c, Complex(0, 0)) != 1)
    throw OriginOutside("interior_moments: origin is not inside the contour");
  InteriorMoments out;
  out.v.resize(K);
  std::vector<KahanSum<Complex>> acc(K);
  KahanSum<Complex> l_acc;
  for (int k = 0; k < M; ++k) {
    Complex base = std::conj(c.z[k]) * c.dz[k];
    Complex p = c.z[k];
    for (int n = 1; n <= K; ++n) {
      acc[n - 1].add(base * p);
      p *= c.z[k];
    }
    // boundary reduction of the interior integral of log|z|
    l_acc.add(base * (std::log(std::norm(c.z[k])) - 1.0));
  }
  for (int n = 1; n <= K; ++n) out.v[n - 1] = acc[n - 1].value() / (kI * Real(M));
  Real L = (-(kI / 4.0) * l_acc.value() * (kTwoPi / M)).real();
  out.v0 = (2.0 / kPi) * L;
  return out;
}

Complex cauchy_pair(const SampledContour& c, Complex z, Location side) {
  if (side == Location::NearBoundary)
    throw InputError("cauchy_pair: side must be Interior or Exterior");
  Location loc = point_location(c, z);
  if (loc == Location::NearBoundary)
    throw NearBoundary("cauchy_pair: z within one grid spacing of the contour");
  if (loc != side)
    throw InputError("cauchy_pair: z is not on the requested side of the contour");
  const int M = c.samples();
  KahanSum<Complex> acc;
  for (int k = 0; k < M; ++k)
    acc.add(std::conj(c.z[k]) / (c.z[k] - z) * c.dz[k]);
  return acc.value() * (kTwoPi / M) / (2.0 * kPi * kI);
}

ExteriorMap map_from_moments(const MomentSet& target, const ExteriorMap& seed,
                             Real tol, int M, int max_iter) {
  validate_map(seed);
  const int N = seed.order();
  if (target.count() != N + 1)
    throw InputError("map_from_moments: target needs t_1..t_{N+1} with N = seed.order()");
  if (!(target.t0 > 0))
    throw InputError("map_from_moments: target t0 must be positive");
  require_univalent(seed, 1024);

  RVector x = pack(seed);
  const int dim = static_cast<int>(x.size());
  RVector f = moment_residual(seed, target, M);
  Real res = f.cwiseAbs().maxCoeff();

  for (int it = 0; it < max_iter; ++it) {
    if (res <= tol) return unpack(x, N);
    // FD Jacobian, central differences per unknown.
    RMatrix J(dim, dim);
    for (int j = 0; j < dim; ++j) {
      Real h = 1e-6 * (1.0 + std::abs(x[j]));
      RVector xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      RVector fp = moment_residual(unpack(xp, N), target, M);
      RVector fm = moment_residual(unpack(xm, N), target, M);
      J.col(j) = (fp - fm) / (2.0 * h);
    }
    RVector step = J.partialPivLu().solve(f);
    Real lam = 1.0;
    bool moved = false;
    for (int h = 0; h < 9; ++h) {
      RVector cand = x - lam * step;
      ExteriorMap mc = unpack(cand, N);
      if (!(mc.r > 0) || !check_univalent(mc, 1024).ok) {
        if (h == 8) throw UnivalenceLost("map_from_moments: iterate left the univalent family");
        lam *= 0.5;
        continue;
      }
      RVector fc = moment_residual(mc, target, M);
      Real rc = fc.cwiseAbs().maxCoeff();
      if (rc < res || h == 8) {
        if (rc >= res && res > tol)
          throw NonConvergence("map_from_moments: residual plateau at " + std::to_string(res));
        x = cand;
        f = fc;
        res = rc;
        moved = true;
        break;
      }
      lam *= 0.5;
    }
    if (!moved && res > tol)
      throw NonConvergence("map_from_moments: no acceptable step");
  }
  if (res <= tol) return unpack(x, N);
  throw NonConvergence("map_from_moments: iteration cap reached at residual " +
                       std::to_string(res));
}

}  // namespace taukit
