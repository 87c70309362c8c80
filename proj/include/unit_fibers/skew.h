#ifndef UNIT_FIBERS_SKEW_H_
#define UNIT_FIBERS_SKEW_H_

#include <cstdint>
#include <vector>

#include "unit_fibers/fibration.h"
#include "unit_fibers/linalg.h"

namespace unit_fibers {

// The affine n-plane through the fiber's center along its normal frame.
AffineSubspace FiberToSkewPlane(const Fiber& fiber);

// n-planes in R^{2n+1} are skew when their directions together with the
// connecting vector span the whole space. Throws Error(kInvalidArgument)
// unless both are n-planes in R^{2n+1}.
bool Skew(const AffineSubspace& a, const AffineSubspace& b);

struct SkewPlaneFamily {
  int ambient_dim = 0;
  std::vector<AffineSubspace> planes;
};

SkewPlaneFamily SkewPlanes(const std::vector<Fiber>& fibers);

// rho(q) = 2^b + 8a for q = odd * 2^(4a+b), 0 <= b <= 3. Throws
// Error(kInvalidArgument) for q < 1.
std::int64_t HurwitzRadon(std::int64_t q);

// Whether R^d admits a skew fibration by affine n-planes:
// n <= rho(d - n) - 1. Throws Error(kInvalidArgument) unless d > n >= 0.
bool SkewFibrationExists(std::int64_t n, std::int64_t d);

// n + 1 == rho(n + 1).
bool UnitFibrationDimensionAdmissible(std::int64_t n);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_SKEW_H_
