#ifndef UNIT_FIBERS_GEOMETRY_H_
#define UNIT_FIBERS_GEOMETRY_H_

#include <array>
#include <cstdint>
#include <vector>

#include "unit_fibers/fibration.h"
#include "unit_fibers/linalg.h"

namespace unit_fibers {

// Closed-form geometry of two standard fibers S_y, S_z. Their containing
// planes meet in a line through the origin with direction v; each sphere
// crosses that line in the two points c +- r v/|v|.
struct IntersectionGeometry {
  int n = 0;
  Vector y;
  Vector z;
  Vector v;
  double v_norm_sq = 0.0;
  // |y - z|^2 + |y|^2 |z|^2 - <y, z>^2, the same quantity evaluated
  // without v.
  double v_norm_sq_parseval = 0.0;
  Vector c_y;
  Vector c_z;
  double d_y_sq = 0.0;
  double d_z_sq = 0.0;
  double r_y = 0.0;
  double r_z = 0.0;
  // |y - z|^2 / |v|.
  double d = 0.0;
  // Right side minus left side of d < r_y + r_z, r_z < r_y + d and
  // r_y < r_z + d.
  double ineq_a = 0.0;
  double ineq_b = 0.0;
  double ineq_c = 0.0;

  AffineSubspace Line() const;
};

// Throws Error(kDegeneratePair) when y == z or |v|^2 < 1e-20.
IntersectionGeometry PairGeometry(int n, const Vector& y, const Vector& z);

enum class CertificateVerdict { kCertifiedDisjoint, kInconclusive };

struct DisjointnessCertificate {
  CertificateVerdict verdict = CertificateVerdict::kInconclusive;
  std::array<double, 3> margins{};
};

inline constexpr double kCertificateMargin = 1e-12;

DisjointnessCertificate CertifyDisjoint(const IntersectionGeometry& g);
DisjointnessCertificate CertifyDisjoint(double r_y, double r_z, double d);

// Intersection of a fiber with an affine subspace.
struct SphereSection {
  enum class Kind { kEmpty, kPoint, kSphere };

  Kind kind = Kind::kEmpty;
  Vector center;
  double radius = 0.0;
  // Directions of the sphere's span; one column means a pair of points.
  Matrix frame;
  bool ill_conditioned = false;

  // The two points of a 0-sphere section.
  std::array<Vector, 2> PointPair() const;
};

inline constexpr double kTangencyBand = 1e-10;

SphereSection IntersectSphere(const Fiber& fiber, const AffineSubspace& plane);

inline constexpr double kTouchingTolerance = 1e-8;

// Linking test for two unit n-spheres in R^{2n+1}: f2 must meet the
// containing plane of f1 exactly twice, once inside f1 and once outside.
//
// Throws Error(kInvalidArgument) unless both fibers have the same n and live
// in R^{2n+1}, Error(kUndefinedLinkedness) when f2 comes within
// kTouchingTolerance of f1 in that plane, and Error(kDegenerateConfiguration)
// when the plane intersection is numerically ill-conditioned.
bool Linked(const Fiber& f1, const Fiber& f2);

// Samples on the unit sphere S^n in R^{n+1}: equally spaced angles for
// n = 1, normalized Halton-Box-Muller points otherwise. Columns are points.
Matrix SphereSamples(int n, int m, std::uint64_t seed = 0);

// Minimum distance between m samples on each fiber.
double MinDistanceSampled(const Fiber& f1, const Fiber& f2, int m,
                          std::uint64_t seed = 0);

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_GEOMETRY_H_
