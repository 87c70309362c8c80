#ifndef UNIT_FIBERS_FIBRATION_H_
#define UNIT_FIBERS_FIBRATION_H_

#include <memory>
#include <optional>

#include "unit_fibers/linalg.h"
#include "unit_fibers/newton.h"

namespace unit_fibers {

// A round unit n-sphere. The sphere lies in the affine plane through
// `center` spanned by `containing_frame` (n+1 columns); `normal_frame` spans
// the orthogonal complement. Together the two frames form an orthonormal
// basis of the ambient space.
struct Fiber {
  int n = 0;
  Vector center;
  Matrix containing_frame;
  Matrix normal_frame;

  static constexpr double kRadius = 1.0;

  int ambient_dim() const { return static_cast<int>(center.size()); }

  // center + containing_frame * u for a unit vector u in R^{n+1}.
  Vector PointAt(const Vector& unit_coords) const;

  AffineSubspace ContainingPlane() const;
  AffineSubspace NormalPlane() const;

  // Largest |<f_i, f_j> - delta_ij| over the combined frame.
  double FrameError() const;

  friend bool operator==(const Fiber&, const Fiber&);
};

// Construction parameters of the dimension-(n+1) unit sphere fibrations
// built from the composition algebras (n = 1, 3, 7).
bool IsStandardFiberDim(int n);

// The fiber S_y through (y, 0) in R^{n+1} x R^n. Its normal directions are
// spanned by (e_m y, delta_m), m = 1..n. Throws Error(kOutOfRegion) for
// |y| >= 1 unless `force` is set.
Fiber StandardFiber(int n, const Vector& y, bool force = false);

// Unnormalized normal generators (e_m y, delta_m) as columns.
Matrix StandardNormalGenerators(int n, const Vector& y);

struct LocateOptions {
  NewtonOptions newton;
  int retries = 16;
  double seed_spread = 0.5;
};

// Solves for y with |y| < 1 and p on S_y. Throws Error(kNotInRegion) when no
// seed converges and Error(kOutOfRegion) when every converged root has
// |y| >= 1.
Vector LocateFiber(int n, const Vector& p, const LocateOptions& options = {});

enum class Handedness { kRight, kLeft };

// Villarceau circle of the torus with major radius 1 and minor radius r:
// p(t) = (r + cos t, +-sqrt(1 - r^2) sin t, r sin t) rotated about the z axis
// by phi. The sign is + for the right-handed family.
Fiber VillarceauFiber(double r, double phi, Handedness handedness = Handedness::kRight);

// Residual of the torus equation (sqrt(x^2+y^2) - 1)^2 + z^2 = r^2.
double TorusResidual(const Vector& p, double r);

struct BialyLocation {
  double r = 0.0;
  double phi = 0.0;  // in [0, 2 pi)
  Fiber fiber;
};

// Right-handed Villarceau fiber of the open bialy (solid torus with major
// and minor radius 1) through p. Throws Error(kOutOfRegion) outside.
BialyLocation BialyLocate(const Vector& p);

enum class FibrationKind { kStandard, kBialy, kStacked };

struct FibrationSpec {
  FibrationKind kind = FibrationKind::kStandard;
  int n = 1;
  // Open height interval for kStacked.
  double stack_lower = 0.0;
  double stack_upper = 0.0;
  std::shared_ptr<const FibrationSpec> base;

  static FibrationSpec Standard(int n);
  static FibrationSpec Bialy();

  int ambient_dim() const;
  // Throws Error(kInvalidArgument) when the kind-specific constraints fail.
  void Validate() const;
};

// E x (a, b) fibered by the base fibers placed at each height.
FibrationSpec Stack(const FibrationSpec& base, double lower, double upper);

// The base fiber embedded in the hyperplane x_{d+1} = t. The new vertical
// direction joins the normal frame.
Fiber LiftFiber(const Fiber& fiber, double t);

// The fiber of `spec` containing p.
Fiber FiberThrough(const FibrationSpec& spec, const Vector& p);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_FIBRATION_H_
