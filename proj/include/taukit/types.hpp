#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace taukit {

using Real = double;
using Complex = std::complex<Real>;

using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using IVector = Eigen::VectorXi;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

// Compensated (Kahan–Neumaier) accumulator.  The tau/Ward pipeline feeds
// O(M^2) double sums into finite differences; naive summation roundoff
// (~1e-13 relative) would dominate the differenced signal.
template <class T>
class KahanSum {
 public:
  void add(const T& x) {
    T t = sum_ + x;
    if constexpr (std::is_same_v<T, Complex>) {
      comp_ += Complex(branch(sum_.real(), x.real(), t.real()),
                       branch(sum_.imag(), x.imag(), t.imag()));
    } else {
      comp_ += branch(sum_, x, t);
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static Real branch(Real s, Real x, Real t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  T sum_{};
  T comp_{};
};

inline int chunk_count(std::ptrdiff_t n) {
  const std::ptrdiff_t hw = static_cast<std::ptrdiff_t>(
      std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::ptrdiff_t>(std::max<std::ptrdiff_t>(n, 1), 4 * hw));
}

// Runs fn(chunk, begin, end) over a deterministic partition of [0, n) into
// chunk_count(n) pieces.  Per-chunk partial results must be combined by the
// caller in chunk order so the reduction is reproducible.
template <class Fn>
void parallel_chunks(std::ptrdiff_t n, Fn&& fn) {
  const int chunks = chunk_count(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = n * c / chunks;
    const std::ptrdiff_t hi = n * (c + 1) / chunks;
    if (lo < hi) pool.emplace_back([&fn, c, lo, hi] { fn(c, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace taukit
