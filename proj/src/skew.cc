#include "unit_fibers/skew.h"

#include <bit>
#include <string>

#include "unit_fibers/error.h"

namespace unit_fibers {

AffineSubspace FiberToSkewPlane(const Fiber& fiber) {
  return AffineSubspace(fiber.center, fiber.normal_frame);
}

bool Skew(const AffineSubspace& a, const AffineSubspace& b) {
  const int d = a.ambient_dim();
  if (b.ambient_dim() != d || d % 2 == 0 || a.dim() != (d - 1) / 2 ||
      b.dim() != (d - 1) / 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "skewness is defined for two n-planes in R^{2n+1}");
  }
  return SpanDim({a.frame(), b.frame()}, {b.base() - a.base()}) == d;
}

SkewPlaneFamily SkewPlanes(const std::vector<Fiber>& fibers) {
  SkewPlaneFamily family;
  for (const auto& f : fibers) {
    if (family.planes.empty()) family.ambient_dim = f.ambient_dim();
    if (f.ambient_dim() != family.ambient_dim) {
      throw Error(ErrorCode::kInvalidArgument, "fibers live in different spaces");
    }
    family.planes.push_back(FiberToSkewPlane(f));
  }
  return family;
}

std::int64_t HurwitzRadon(std::int64_t q) {
  if (q < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "Hurwitz-Radon function needs q >= 1, got " + std::to_string(q));
  }
  const int twos = std::countr_zero(static_cast<std::uint64_t>(q));
  const std::int64_t a = twos / 4;
  const std::int64_t b = twos % 4;
  return (std::int64_t{1} << b) + 8 * a;
}

bool SkewFibrationExists(std::int64_t n, std::int64_t d) {
  if (n < 0 || d <= n) {
    throw Error(ErrorCode::kInvalidArgument, "need d > n >= 0");
  }
  return n <= HurwitzRadon(d - n) - 1;
}

bool UnitFibrationDimensionAdmissible(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "need n >= 0");
  return n + 1 == HurwitzRadon(n + 1);
}

}  // namespace unit_fibers
