#pragma once

#include <stdexcept>
#include <string>

namespace taukit {

// Root of everything this library throws on a numerics/domain failure.
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user-supplied argument (shape, range, parity) detected before any math.
class InputError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// An iteration (Newton inversion, moment solve) failed to reach tolerance.
class NonConvergence : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// A point that must lie in the exterior domain was found inside the contour.
class InteriorPoint : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Evaluation point closer to the contour than the sampling guard band.
class NearBoundary : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// The contour does not wind once around the origin.
class OriginOutside : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Coefficients give a non-positive enclosed area.
class NonpositiveArea : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// The candidate map is not injective on the exterior disk.
class UnivalenceLost : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Im(Omega) is not (safely) positive definite.
class DegenerateImOmega : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Theta value at the working point vanishes; log-derivatives undefined.
class OnThetaDivisor : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Requested lattice-sum window cannot reach the requested tail bound.
class WindowTooSmall : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Evaluation point collides with a lattice point / diagonal singularity.
class LatticePoint : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// Two evaluation points coincide where a kernel has a pole.
class CoincidentPoints : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// A truncated series still carries too much tail mass.
class TailTooLarge : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

}  // namespace taukit
