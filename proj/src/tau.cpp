#include "taukit/tau.hpp"

#include <cmath>
#include <vector>

#include "taukit/moments.hpp"

namespace taukit {

namespace {

struct OffsetGrids {
  CVector z, dz;    // sigma_k
  CVector zq, dzq;  // sigma_k + h/2
};

OffsetGrids offset_grids(const ExteriorMap& map, int M) {
  OffsetGrids g;
  SampledContour c = sample(map, M);
  g.z = c.z;
  g.dz = c.dz;
  g.zq.resize(M);
  g.dzq.resize(M);
  const Real h = kTwoPi / M;
  for (int k = 0; k < M; ++k) {
    Real s = h * (k + 0.5);
    Complex w(std::cos(s), std::sin(s));
    g.zq[k] = eval_g(map, w);
    g.dzq[k] = kI * w * eval_g_prime(map, w);
  }
  return g;
}

// E = (1/16) oint oint (conj(w) - conj(z))^2 (log|w-z|^2 - 3/2) dz dw
// with the outer loop on (z, dz) and the inner on (zq, dzq); the integrand
// vanishes on the diagonal, which the offset grids never hit.
Real energy_double_sum(const CVector& z, const CVector& dz, const CVector& zq,
                       const CVector& dzq, Real h) {
  const int M = static_cast<int>(z.size());
  std::vector<KahanSum<Complex>> sums(chunk_count(M));
  parallel_chunks(M, [&](int idx, std::ptrdiff_t lo, std::ptrdiff_t hi) {
    KahanSum<Complex> local;
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const Complex zi = z[i];
      Complex row{};
      for (int j = 0; j < M; ++j) {
        const Complex d = zq[j] - zi;
        const Real n2 = std::norm(d);
        const Complex cd = std::conj(d);
        row += dzq[j] * (cd * cd) * (std::log(n2) - 1.5);
      }
      local.add(dz[i] * row);
    }
    sums[idx] = local;
  });
  KahanSum<Complex> total;
  for (auto& s : sums) total.add(s.value());
  return ((1.0 / 16.0) * h * h * total.value()).real();
}

}  // namespace

TauReport log_tau_boundary(const ExteriorMap& map, int M) {
  require_univalent(map, std::min(M, 4096));
  SampledContour probe = sample(map, 64);
  if (winding_number(probe, Complex(0, 0)) != 1)
    throw OriginOutside("log_tau_boundary: origin is not inside the contour");

  OffsetGrids g = offset_grids(map, M);
  const Real h = kTwoPi / M;
  Real E = energy_double_sum(g.z, g.dz, g.zq, g.dzq, h);

  // L = Re[ -(i/4) oint conj(z) (log|z|^2 - 1) dz ]
  KahanSum<Complex> l_acc;
  for (int k = 0; k < M; ++k)
    l_acc.add(std::conj(g.z[k]) * (std::log(std::norm(g.z[k])) - 1.0) * g.dz[k]);
  Real L = (-(kI / 4.0) * l_acc.value() * h).real();

  TauReport rep;
  rep.method = TauMethod::BoundaryReduced;
  rep.energy_E = E;
  rep.log_term_L = L;
  rep.area = area(map);
  rep.resolution = M;
  rep.log_tau = -(E - 2.0 * rep.area * L) / (kPi * kPi);
  return rep;
}

TauReport log_tau_grid(const ExteriorMap& map, int grid_n, int M_classify) {
  if (grid_n < 16) throw InputError("log_tau_grid: grid_n must be >= 16");
  require_univalent(map, std::min(M_classify, 4096));
  SampledContour c = sample(map, M_classify);
  if (winding_number(c, Complex(0, 0)) != 1)
    throw OriginOutside("log_tau_grid: origin is not inside the contour");

  // Square box centered on the bounding-box center with a small margin.
  Real xmin = c.z[0].real(), xmax = xmin, ymin = c.z[0].imag(), ymax = ymin;
  for (int k = 1; k < c.samples(); ++k) {
    xmin = std::min(xmin, c.z[k].real());
    xmax = std::max(xmax, c.z[k].real());
    ymin = std::min(ymin, c.z[k].imag());
    ymax = std::max(ymax, c.z[k].imag());
  }
  const Real cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const Real side = std::max(xmax - xmin, ymax - ymin) * (1.0 + 4.0 / grid_n);
  const Real a = side / grid_n;

  // Midpoint cell centers classified by winding parity alone: the guard band
  // protects singular kernels, not area bookkeeping, and dropping boundary
  // cells would bias the pixel area.
  std::vector<Complex> cells;
  cells.reserve(static_cast<std::size_t>(grid_n) * grid_n / 2);
  {
    std::vector<std::vector<Complex>> per_chunk(chunk_count(grid_n));
    parallel_chunks(grid_n, [&](int idx, std::ptrdiff_t lo, std::ptrdiff_t hi) {
      std::vector<Complex> local;
      for (std::ptrdiff_t i = lo; i < hi; ++i) {
        Real x = cx - side / 2 + a * (i + 0.5);
        for (int j = 0; j < grid_n; ++j) {
          Complex p(x, cy - side / 2 + a * (j + 0.5));
          if (winding_number(c, p) != 0) local.push_back(p);
        }
      }
      per_chunk[idx] = std::move(local);
    });
    for (auto& v : per_chunk) cells.insert(cells.end(), v.begin(), v.end());
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cells.size());
  if (n == 0) throw NumericsError("log_tau_grid: no interior cells found");

  // E = a^4 [ sum_{i != j} log|c_i - c_j| + n (log a + square self-energy) ]
  const Real a4 = a * a * a * a;
  std::vector<KahanSum<Real>> sums(chunk_count(n));
  parallel_chunks(n, [&](int idx, std::ptrdiff_t lo, std::ptrdiff_t hi) {
    KahanSum<Real> local;
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const Complex ci = cells[i];
      Real row = 0.0;
      for (std::ptrdiff_t j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::log(std::norm(ci - cells[j]));
      }
      local.add(0.5 * row);
    }
    sums[idx] = local;
  });
  KahanSum<Real> e_acc;
  for (auto& s : sums) e_acc.add(s.value());
  Real E = a4 * (e_acc.value() + Real(n) * (std::log(a) + kUnitSquareSelfEnergy));

  KahanSum<Real> l_acc;
  for (std::ptrdiff_t i = 0; i < n; ++i) l_acc.add(std::log(std::abs(cells[i])));
  Real L = a * a * l_acc.value();
  Real A = Real(n) * a * a;

  TauReport rep;
  rep.method = TauMethod::GridOracle;
  rep.energy_E = E;
  rep.log_term_L = L;
  rep.area = A;
  rep.resolution = grid_n;
  rep.log_tau = -(E - 2.0 * A * L) / (kPi * kPi);
  return rep;
}

Real energy_swap_defect(const ExteriorMap& map, int M) {
  OffsetGrids g = offset_grids(map, M);
  const Real h = kTwoPi / M;
  const Real e1 = energy_double_sum(g.z, g.dz, g.zq, g.dzq, h);
  const Real e2 = energy_double_sum(g.zq, g.dzq, g.z, g.dz, h);
  return std::abs(e1 - e2);
}

Real potential_phi(const ExteriorMap& map, Complex z, int M) {
  SampledContour c = sample(map, M);
  Location loc = point_location(c, z);
  if (loc == Location::NearBoundary)
    throw NearBoundary("potential_phi: z within one grid spacing of the contour");
  if (loc == Location::Interior)
    throw InteriorPoint("potential_phi: z must be exterior");
  // inner = integral of log|z-w| over the interior, reduced to
  // Re[ -(i/4) oint (conj(w) - conj(z)) (log|w-z|^2 - 1) dw ].
  KahanSum<Complex> acc;
  for (int k = 0; k < M; ++k) {
    Complex d = c.z[k] - z;
    acc.add(std::conj(d) * (std::log(std::norm(d)) - 1.0) * c.dz[k]);
  }
  Real inner = (-(kI / 4.0) * acc.value() * (kTwoPi / M)).real();
  Real A = area(map);
  return (2.0 * A / kPi) * std::log(std::abs(z)) - (2.0 / kPi) * inner;
}

Complex current_1pt(const ExteriorMap& map, Complex z, int M) {
  SampledContour c = sample(map, M);
  Location loc = point_location(c, z);
  if (loc == Location::NearBoundary)
    throw NearBoundary("current_1pt: z within one grid spacing of the contour");
  if (loc == Location::Interior)
    throw InteriorPoint("current_1pt: z must be exterior");
  // d/dz of the boundary-reduced potential:
  // t0/z + (1/2 pi i) oint (conj(w) - conj(z)) / (w - z) dw.
  KahanSum<Complex> acc;
  for (int k = 0; k < M; ++k)
    acc.add((std::conj(c.z[k]) - std::conj(z)) / (c.z[k] - z) * c.dz[k]);
  Real t0 = area(map) / kPi;
  return t0 / z + acc.value() * (kTwoPi / M) / (2.0 * kPi * kI);
}

}  // namespace taukit
