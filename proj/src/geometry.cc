#include "unit_fibers/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "unit_fibers/error.h"
#include "unit_fibers/hypercomplex.h"

namespace unit_fibers {
namespace {

double RadicalInverse(std::uint64_t k, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

constexpr std::array<std::uint64_t, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                   23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

AffineSubspace IntersectionGeometry::Line() const {
  return AffineSubspace(Vector::Zero(v.size()), v);
}

IntersectionGeometry PairGeometry(int n, const Vector& y, const Vector& z) {
  if (!IsStandardFiberDim(n)) {
    throw Error(ErrorCode::kInvalidArgument, "fiber dimension must be 1, 3 or 7");
  }
  if (y.size() != n + 1 || z.size() != n + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "center parameters must have " + std::to_string(n + 1) + " coordinates");
  }
  if (y == z) throw Error(ErrorCode::kDegeneratePair, "y and z coincide");

  IntersectionGeometry g;
  g.n = n;
  g.y = y;
  g.z = z;
  const Vector diff = y - z;
  g.v = Vector::Zero(2 * n + 1);
  g.v.head(n + 1) = diff;
  // Tail entries <e_m y, z> make v orthogonal to every (e_m y, delta_m) and
  // (e_m z, delta_m).
  for (int m = 1; m <= n; ++m) g.v(n + m) = ImaginaryLeftMultiply(m, y).dot(z);
  g.v_norm_sq = g.v.squaredNorm();
  if (g.v_norm_sq < 1e-20) {
    throw Error(ErrorCode::kDegeneratePair, "intersection line direction vanishes");
  }
  const double yz = y.dot(z);
  g.v_norm_sq_parseval = diff.squaredNorm() + y.squaredNorm() * z.squaredNorm() - yz * yz;

  const double y_along = y.dot(diff);
  const double z_along = z.dot(diff);
  g.c_y = (y_along / g.v_norm_sq) * g.v;
  g.c_z = (z_along / g.v_norm_sq) * g.v;
  g.d_y_sq = y.squaredNorm() - y_along * y_along / g.v_norm_sq;
  g.d_z_sq = z.squaredNorm() - z_along * z_along / g.v_norm_sq;
  // NaN when a sphere misses the line, which leaves the certificate
  // inconclusive.
  g.r_y = std::sqrt(1.0 - g.d_y_sq);
  g.r_z = std::sqrt(1.0 - g.d_z_sq);
  g.d = diff.squaredNorm() / std::sqrt(g.v_norm_sq);

  const auto cert = CertifyDisjoint(g.r_y, g.r_z, g.d);
  g.ineq_a = cert.margins[0];
  g.ineq_b = cert.margins[1];
  g.ineq_c = cert.margins[2];
  return g;
}

DisjointnessCertificate CertifyDisjoint(double r_y, double r_z, double d) {
  DisjointnessCertificate c;
  c.margins = {r_y + r_z - d, r_y + d - r_z, r_z + d - r_y};
  const bool ok = std::all_of(c.margins.begin(), c.margins.end(),
                              [](double m) { return m > kCertificateMargin; });
  c.verdict = ok ? CertificateVerdict::kCertifiedDisjoint : CertificateVerdict::kInconclusive;
  return c;
}

DisjointnessCertificate CertifyDisjoint(const IntersectionGeometry& g) {
  return CertifyDisjoint(g.r_y, g.r_z, g.d);
}

std::array<Vector, 2> SphereSection::PointPair() const {
  if (kind != Kind::kSphere || frame.cols() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "section is not a pair of points");
  }
  return {center - radius * frame.col(0), center + radius * frame.col(0)};
}

SphereSection IntersectSphere(const Fiber& fiber, const AffineSubspace& plane) {
  if (plane.ambient_dim() != fiber.ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimensions differ");
  }
  SphereSection s;
  const auto meet = AffineIntersect(plane, fiber.ContainingPlane());
  if (!meet) return s;

  const Vector foot = meet->Project(fiber.center);
  const double gap = 1.0 - (foot - fiber.center).squaredNorm();
  if (std::abs(gap) <= kTangencyBand) {
    s.kind = SphereSection::Kind::kPoint;
    s.center = foot;
    s.frame = Matrix(foot.size(), 0);
  } else if (gap > 0.0 && meet->dim() > 0) {
    s.kind = SphereSection::Kind::kSphere;
    s.center = foot;
    s.radius = std::sqrt(gap);
    s.frame = meet->frame();
  }
  s.ill_conditioned = meet->ill_conditioned();
  return s;
}

bool Linked(const Fiber& f1, const Fiber& f2) {
  if (f1.n != f2.n || f1.ambient_dim() != f2.ambient_dim() ||
      f1.ambient_dim() != 2 * f1.n + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "linking of unit n-spheres is defined in dimension 2n+1 only");
  }
  const SphereSection s = IntersectSphere(f2, f1.ContainingPlane());
  if (s.ill_conditioned) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "containing planes meet in an ill-conditioned configuration");
  }
  if (s.kind == SphereSection::Kind::kEmpty) return false;

  // Every point x of the section lies on f2, and its distance to f1 is
  // | |x - c1| - 1 |.
  auto touches = [](double dist) { return std::abs(dist - 1.0) < kTouchingTolerance; };
  const Vector rel = s.center - f1.center;
  if (s.kind == SphereSection::Kind::kPoint) {
    if (touches(rel.norm())) {
      throw Error(ErrorCode::kUndefinedLinkedness, "fibers touch");
    }
    return false;
  }
  if (s.frame.cols() == 1) {
    const auto pts = s.PointPair();
    const double da = (pts[0] - f1.center).norm();
    const double db = (pts[1] - f1.center).norm();
    if (touches(da) || touches(db)) {
      throw Error(ErrorCode::kUndefinedLinkedness, "fibers intersect or touch");
    }
    return (da < 1.0) != (db < 1.0);
  }
  // Over a section sphere of positive dimension, |x - c1|^2 fills the
  // interval base +- 2 radius |frame^T (center - c1)|.
  const double base = rel.squaredNorm() + s.radius * s.radius;
  const double spread = 2.0 * s.radius * (s.frame.transpose() * rel).norm();
  const double lo = std::sqrt(std::max(0.0, base - spread));
  const double hi = std::sqrt(base + spread);
  if (lo - kTouchingTolerance < 1.0 && 1.0 < hi + kTouchingTolerance) {
    throw Error(ErrorCode::kUndefinedLinkedness, "fibers intersect or touch");
  }
  return false;
}

Matrix SphereSamples(int n, int m, std::uint64_t seed) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 samples");
  Matrix out(n + 1, m);
  if (n == 1) {
    for (int k = 0; k < m; ++k) {
      const double t = 2.0 * std::numbers::pi * k / m;
      out(0, k) = std::cos(t);
      out(1, k) = std::sin(t);
    }
    return out;
  }
  if (2 * ((n + 2) / 2) > static_cast<int>(kPrimes.size())) {
    throw Error(ErrorCode::kInvalidArgument, "sphere dimension too large for sampling");
  }
  for (int k = 0; k < m; ++k) {
    const std::uint64_t index = seed + static_cast<std::uint64_t>(k) + 1;
    for (int j = 0; j <= n; j += 2) {
      // Box-Muller on a pair of Halton coordinates.
      const double u1 = RadicalInverse(index, kPrimes[j]);
      const double u2 = RadicalInverse(index, kPrimes[j + 1]);
      const double radius = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
      out(j, k) = radius * std::cos(2.0 * std::numbers::pi * u2);
      if (j + 1 <= n) out(j + 1, k) = radius * std::sin(2.0 * std::numbers::pi * u2);
    }
    const double norm = out.col(k).norm();
    if (norm == 0.0) {
      out.col(k) = Vector::Unit(n + 1, 0);
    } else {
      out.col(k) /= norm;
    }
  }
  return out;
}

double MinDistanceSampled(const Fiber& f1, const Fiber& f2, int m, std::uint64_t seed) {
  if (f1.ambient_dim() != f2.ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimensions differ");
  }
  const Matrix p1 = (f1.containing_frame * SphereSamples(f1.n, m, seed)).colwise() + f1.center;
  const Matrix p2 = (f2.containing_frame * SphereSamples(f2.n, m, seed)).colwise() + f2.center;
  const Vector sq1 = p1.colwise().squaredNorm().transpose();
  const Vector sq2 = p2.colwise().squaredNorm().transpose();

  // Squared distances via |a|^2 + |b|^2 - 2 a.b in row blocks, then the
  // best candidate is re-evaluated directly to remove the cancellation.
  constexpr int kBlock = 256;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Index bi = 0, bj = 0;
  for (int start = 0; start < m; start += kBlock) {
    const int rows = std::min(kBlock, m - start);
    Matrix d2 = -2.0 * p1.middleCols(start, rows).transpose() * p2;
    d2.colwise() += sq1.segment(start, rows);
    d2.rowwise() += sq2.transpose();
    Eigen::Index i, j;
    const double v = d2.minCoeff(&i, &j);
    if (v < best) {
      best = v;
      bi = start + i;
      bj = j;
    }
  }
  return (p1.col(bi) - p2.col(bj)).norm();
}

}  // namespace unit_fibers
