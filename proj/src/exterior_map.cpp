#include "taukit/exterior_map.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace taukit {

namespace {

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// Raw evaluation without the |w| >= 1 gate (Newton iterates may dip below).
Complex g_raw(const ExteriorMap& map, Complex w) {
  Complex z = map.r * w + map.b0;
  Complex wi = 1.0 / w;
  Complex p = wi;
  for (int k = 0; k < map.order(); ++k) {
    z += map.coeffs[k] * p;
    p *= wi;
  }
  return z;
}

Complex gp_raw(const ExteriorMap& map, Complex w) {
  Complex d = map.r;
  Complex wi = 1.0 / w;
  Complex p = wi * wi;
  for (int k = 0; k < map.order(); ++k) {
    d -= Real(k + 1) * map.coeffs[k] * p;
    p *= wi;
  }
  return d;
}

// Full Laurent coefficients of g^n: powers -n*N .. n, exact products.
CVector laurent_power(const ExteriorMap& map, int n, int* lowest) {
  const int N = map.order();
  const int low = -std::max(n * N, 0);
  const int len = n - low + 1;
  CVector cur = CVector::Zero(len);
  cur[0 - low] = 1.0;  // g^0 = 1
  CVector gco = CVector::Zero(N + 2);  // powers -N..1 stored as gco[p - (-N)]
  for (int k = N; k >= 1; --k) gco[N - k] = map.coeffs[k - 1];
  gco[N] = map.b0;
  gco[N + 1] = map.r;
  for (int step = 0; step < n; ++step) {
    CVector nxt = CVector::Zero(len);
    for (int i = 0; i < len; ++i) {
      if (cur[i] == Complex(0.0, 0.0)) continue;
      for (int j = 0; j <= N + 1; ++j) {
        const int p = (i + low) + (j - N);
        if (p < low || p > n) continue;
        nxt[p - low] += cur[i] * gco[j];
      }
    }
    cur.swap(nxt);
  }
  *lowest = low;
  return cur;
}

int single_newton(const ExteriorMap& map, Complex z, Real tol, Complex* w_io,
                  int max_iter) {
  Complex w = *w_io;
  const Real scale = 1.0 + std::abs(z);
  Real res = std::abs(g_raw(map, w) - z);
  for (int it = 0; it < max_iter; ++it) {
    if (res <= tol * scale) {
      *w_io = w;
      return it;
    }
    Complex d = gp_raw(map, w);
    if (d == Complex(0.0, 0.0)) return -1;
    Complex step = (g_raw(map, w) - z) / d;
    Real lam = 1.0;
    for (int h = 0; h < 8; ++h) {
      Complex cand = w - lam * step;
      Real r2 = std::abs(g_raw(map, cand) - z);
      if (r2 < res || h == 7) {
        w = cand;
        res = r2;
        break;
      }
      lam *= 0.5;
    }
  }
  *w_io = w;
  return res <= tol * scale ? max_iter : -1;
}

}  // namespace

void validate_map(const ExteriorMap& map) {
  if (!(map.r > 0.0) || !std::isfinite(map.r))
    throw InputError("ExteriorMap: leading coefficient r must be positive and finite");
  if (!finite(map.b0)) throw InputError("ExteriorMap: b0 must be finite");
  for (int k = 0; k < map.order(); ++k)
    if (!finite(map.coeffs[k]))
      throw InputError("ExteriorMap: coefficient b_" + std::to_string(k + 1) +
                       " must be finite");
}

ExteriorMap pad_map(const ExteriorMap& map, int new_order) {
  if (new_order <= map.order()) return map;
  ExteriorMap out = map;
  out.coeffs = CVector::Zero(new_order);
  out.coeffs.head(map.order()) = map.coeffs;
  return out;
}

Complex eval_g(const ExteriorMap& map, Complex w) {
  if (std::abs(w) < 1.0 - 1e-12)
    throw InputError("eval_g: |w| must be >= 1 (got " + std::to_string(std::abs(w)) + ")");
  return g_raw(map, w);
}

Complex eval_g_prime(const ExteriorMap& map, Complex w) {
  if (std::abs(w) < 1.0 - 1e-12)
    throw InputError("eval_g_prime: |w| must be >= 1");
  return gp_raw(map, w);
}

Complex eval_G(const ExteriorMap& map, Complex z, Real tol) {
  validate_map(map);
  Complex w = (z - map.b0) / map.r;
  if (single_newton(map, z, tol, &w, 50) >= 0) {
    if (std::abs(w) < 1.0 - 1e-10)
      throw InteriorPoint("eval_G: point maps inside the unit disk (interior point)");
    return w;
  }
  // Continuation from a far point along the segment to z.
  Real far = 10.0 * (map.r + map.coeffs.cwiseAbs().sum() + std::abs(z - map.b0) + 1.0);
  Complex dir = std::abs(z - map.b0) > 0 ? (z - map.b0) / std::abs(z - map.b0) : Complex(1, 0);
  Complex z_far = map.b0 + far * dir;
  w = (z_far - map.b0) / map.r;
  const int steps = 200;
  for (int s = 1; s <= steps; ++s) {
    Complex zt = z_far + (Real(s) / steps) * (z - z_far);
    if (single_newton(map, zt, tol, &w, 30) < 0) {
      SampledContour c = sample(map, 1024);
      if (winding_number(c, z) != 0)
        throw InteriorPoint("eval_G: z is not in the exterior domain");
      throw NonConvergence("eval_G: Newton continuation failed to reach tolerance");
    }
  }
  if (std::abs(w) < 1.0 - 1e-10) {
    SampledContour c = sample(map, 1024);
    if (winding_number(c, z) != 0)
      throw InteriorPoint("eval_G: z is not in the exterior domain");
    throw NonConvergence("eval_G: converged to a non-exterior branch");
  }
  return w;
}

Complex eval_G_prime(const ExteriorMap& map, Complex z, Real tol) {
  return 1.0 / gp_raw(map, eval_G(map, z, tol));
}

Real SampledContour::guard_band() const {
  Real m = 0.0;
  for (int k = 0; k < samples(); ++k) m = std::max(m, std::abs(dz[k]));
  return kTwoPi * m / samples();
}

SampledContour sample(const ExteriorMap& map, int M) {
  validate_map(map);
  if (M < 64 || !power_of_two(M))
    throw InputError("sample: M must be a power of two >= 64");
  SampledContour c;
  c.z.resize(M);
  c.dz.resize(M);
  for (int k = 0; k < M; ++k) {
    Real s = kTwoPi * k / M;
    Complex w(std::cos(s), std::sin(s));
    c.z[k] = g_raw(map, w);
    c.dz[k] = kI * w * gp_raw(map, w);
  }
  return c;
}

UnivalenceReport check_univalent(const ExteriorMap& map, int M) {
  validate_map(map);
  UnivalenceReport rep;
  for (int k = 0; k < M; ++k) {
    Real s = kTwoPi * k / M;
    Complex w(std::cos(s), std::sin(s));
    if (std::abs(gp_raw(map, w)) < 1e-12 * map.r) {
      rep.ok = false;
      rep.failure = "derivative vanishes on the boundary grid";
      return rep;
    }
  }
  SampledContour c = sample(map, M);
  // Quadratic segment scan on a decimated polygon (the map is analytic, so
  // self-intersections are not grid-scale features).
  const int S = std::min(M, 1024);
  const int stride = M / S;
  auto pt = [&](int i) { return c.z[(i * stride) % M]; };
  auto seg_cross = [](Complex a, Complex b, Complex p, Complex q) {
    auto orient = [](Complex u, Complex v, Complex w2) {
      Real v1 = (v - u).real() * (w2 - u).imag() - (v - u).imag() * (w2 - u).real();
      return v1 > 0 ? 1 : (v1 < 0 ? -1 : 0);
    };
    int o1 = orient(a, b, p), o2 = orient(a, b, q);
    int o3 = orient(p, q, a), o4 = orient(p, q, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
  };
  for (int i = 0; i < S; ++i) {
    for (int j = i + 2; j < S; ++j) {
      if (i == 0 && j == S - 1) continue;  // adjacent around the wrap
      if (seg_cross(pt(i), pt(i + 1), pt(j), pt(j + 1))) {
        rep.ok = false;
        rep.failure = "boundary polygon self-intersects";
        return rep;
      }
    }
  }
  if (winding_number(c, Complex(0, 0)) != 1) {
    rep.ok = false;
    rep.failure = "winding number about the origin is not +1";
    return rep;
  }
  return rep;
}

void require_univalent(const ExteriorMap& map, int M) {
  UnivalenceReport rep = check_univalent(map, M);
  if (!rep.ok) throw UnivalenceLost("map is not univalent: " + rep.failure);
}

int winding_number(const SampledContour& c, Complex p) {
  // Signed horizontal ray crossings.
  const int M = c.samples();
  int wind = 0;
  const Real px = p.real(), py = p.imag();
  for (int k = 0; k < M; ++k) {
    const Complex& a = c.z[k];
    const Complex& b = c.z[(k + 1) & (M - 1)];
    const bool below1 = a.imag() <= py;
    const bool below2 = b.imag() <= py;
    if (below1 == below2) continue;
    Real t = (py - a.imag()) / (b.imag() - a.imag());
    Real xint = a.real() + t * (b.real() - a.real());
    if (xint > px) wind += below1 ? 1 : -1;
  }
  return wind;
}

Real boundary_distance(const SampledContour& c, Complex p) {
  const int M = c.samples();
  Real best = std::numeric_limits<Real>::max();
  for (int k = 0; k < M; ++k) {
    Complex a = c.z[k];
    Complex b = c.z[(k + 1) & (M - 1)];
    Complex ab = b - a;
    Real len2 = std::norm(ab);
    Real t = len2 > 0 ? std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(p - (a + t * ab)));
  }
  return best;
}

Location point_location(const SampledContour& c, Complex p) {
  if (boundary_distance(c, p) < c.guard_band()) return Location::NearBoundary;
  return winding_number(c, p) != 0 ? Location::Interior : Location::Exterior;
}

Real area(const ExteriorMap& map) {
  validate_map(map);
  Real s = map.r * map.r;
  for (int k = 1; k <= map.order(); ++k) s -= k * std::norm(map.coeffs[k - 1]);
  if (s <= 0.0)
    throw NonpositiveArea("area: coefficient mass exceeds r^2 (non-univalent map)");
  return kPi * s;
}

Real area_quadrature(const SampledContour& c) {
  const int M = c.samples();
  KahanSum<Complex> acc;
  for (int k = 0; k < M; ++k) acc.add(std::conj(c.z[k]) * c.dz[k]);
  return (acc.value() * (kTwoPi / M) / (2.0 * kI)).real();
}

FaberPolynomial faber(const ExteriorMap& map, int n) {
  validate_map(map);
  if (n < 0) throw InputError("faber: degree must be >= 0");
  int low = 0;
  CVector full = laurent_power(map, n, &low);
  FaberPolynomial p;
  p.degree = n;
  p.c = full.segment(0 - low, n + 1);
  return p;
}

Complex eval_poly(const FaberPolynomial& p, Complex w) {
  Complex acc = 0.0;
  for (int k = p.degree; k >= 0; --k) acc = acc * w + p.c[k];
  return acc;
}

Complex eval_poly_prime(const FaberPolynomial& p, Complex w) {
  Complex acc = 0.0;
  for (int k = p.degree; k >= 1; --k) acc = acc * w + Real(k) * p.c[k];
  return acc;
}

Complex laurent_constant_term(const ExteriorMap& map, int n) {
  if (n < 0) throw InputError("laurent_constant_term: n must be >= 0");
  int low = 0;
  CVector full = laurent_power(map, n, &low);
  return full[0 - low];
}

CVector deformation_form(const ExteriorMap& map, int n, const SampledContour& c) {
  const int M = c.samples();
  CVector out(M);
  if (n == 0) {
    out.setConstant(kI);
    return out;
  }
  FaberPolynomial F = faber(map, n);
  for (int k = 0; k < M; ++k) {
    Real s = kTwoPi * k / M;
    Complex w(std::cos(s), std::sin(s));
    out[k] = eval_poly_prime(F, w) * kI * w;
  }
  return out;
}

CMatrix duality_matrix(const ExteriorMap& map, int nmax, int M) {
  SampledContour c = sample(map, M);
  const Real h = kTwoPi / M;
  CMatrix zneg(nmax, M);  // z^{-m}
  for (int k = 0; k < M; ++k) {
    Complex zi = 1.0 / c.z[k];
    Complex p = zi;
    for (int m = 1; m <= nmax; ++m) {
      zneg(m - 1, k) = p;
      p *= zi;
    }
  }
  CMatrix D(nmax, nmax);
  for (int n = 1; n <= nmax; ++n) {
    CVector om = deformation_form(map, n, c);
    for (int m = 1; m <= nmax; ++m) {
      KahanSum<Complex> acc;
      for (int k = 0; k < M; ++k) acc.add(zneg(m - 1, k) * om[k]);
      D(m - 1, n - 1) = acc.value() * h / (2.0 * kPi * kI) / Real(m);
    }
  }
  return D;
}

Real spectral_consistency(const SampledContour& c) {
  const int M = c.samples();
  Eigen::FFT<Real> fft;
  std::vector<Complex> in(c.z.data(), c.z.data() + M), freq(M), dz(M);
  fft.fwd(freq, in);
  for (int j = 0; j < M; ++j) {
    int k = j < M / 2 ? j : j - M;
    if (j == M / 2) k = 0;  // Nyquist has no consistent odd derivative
    freq[j] *= kI * Real(k);
  }
  fft.inv(dz, freq);
  Real scale = 0.0, gap = 0.0;
  for (int k = 0; k < M; ++k) scale = std::max(scale, std::abs(c.dz[k]));
  for (int k = 0; k < M; ++k) gap = std::max(gap, std::abs(dz[k] - c.dz[k]));
  return gap / scale;
}

}  // namespace taukit
