#include "unit_fibers/fibration.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "unit_fibers/error.h"
#include "unit_fibers/hypercomplex.h"

namespace unit_fibers {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void RequireStandardDim(int n) {
  if (!IsStandardFiberDim(n)) {
    throw Error(ErrorCode::kInvalidArgument,
                "fiber dimension must be 1, 3 or 7, got " + std::to_string(n));
  }
}

Matrix RotationZ(double phi) {
  Matrix r = Matrix::Identity(3, 3);
  const double c = std::cos(phi), s = std::sin(phi);
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  return r;
}

double WrapAngle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

}  // namespace

Vector Fiber::PointAt(const Vector& unit_coords) const {
  return center + containing_frame * unit_coords;
}

AffineSubspace Fiber::ContainingPlane() const {
  return AffineSubspace(center, containing_frame);
}

AffineSubspace Fiber::NormalPlane() const {
  return AffineSubspace(center, normal_frame);
}

double Fiber::FrameError() const {
  Matrix all(ambient_dim(), containing_frame.cols() + normal_frame.cols());
  all << containing_frame, normal_frame;
  const Matrix gram = all.transpose() * all;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

bool operator==(const Fiber& a, const Fiber& b) {
  auto same = [](const Matrix& x, const Matrix& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  return a.n == b.n && same(a.center, b.center) &&
         same(a.containing_frame, b.containing_frame) &&
         same(a.normal_frame, b.normal_frame);
}

bool IsStandardFiberDim(int n) { return n == 1 || n == 3 || n == 7; }

Matrix StandardNormalGenerators(int n, const Vector& y) {
  RequireStandardDim(n);
  if (y.size() != n + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "center parameter must have " + std::to_string(n + 1) + " coordinates");
  }
  Matrix gens = Matrix::Zero(2 * n + 1, n);
  for (int m = 1; m <= n; ++m) {
    gens.col(m - 1).head(n + 1) = ImaginaryLeftMultiply(m, y);
    gens(n + m, m - 1) = 1.0;
  }
  return gens;
}

Fiber StandardFiber(int n, const Vector& y, bool force) {
  RequireStandardDim(n);
  if (y.size() != n + 1 || !y.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "center parameter must be " + std::to_string(n + 1) + " finite coordinates");
  }
  if (!force && y.norm() >= 1.0) {
    throw Error(ErrorCode::kOutOfRegion,
                "|y| = " + std::to_string(y.norm()) + " is outside the open unit ball");
  }
  const Matrix gens = StandardNormalGenerators(n, y);

  // The containing directions are the graph of a -> -(<e_m y, a>)_m over
  // R^{n+1}, which is orthogonal to every generator.
  Matrix graph = Matrix::Zero(2 * n + 1, n + 1);
  graph.topRows(n + 1) = Matrix::Identity(n + 1, n + 1);
  graph.bottomRows(n) = -gens.topRows(n + 1).transpose();

  Fiber f;
  f.n = n;
  f.center = Vector::Zero(2 * n + 1);
  f.center.head(n + 1) = y;
  f.normal_frame = Orthonormalize(gens);
  f.containing_frame = Orthonormalize(graph);
  return f;
}

Vector LocateFiber(int n, const Vector& p, const LocateOptions& options) {
  RequireStandardDim(n);
  if (p.size() != 2 * n + 1 || !p.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                "point must have " + std::to_string(2 * n + 1) + " finite coordinates");
  }
  const Vector a = p.head(n + 1);
  const Vector b = p.tail(n);
  std::vector<Matrix> left(n);
  for (int m = 1; m <= n; ++m) left[m - 1] = LeftMultiplicationMatrix(m, n + 1);

  // Rows 0..n-1: <p - (y,0), (e_m y, delta_m)>. Row n: (|p - (y,0)|^2 - 1) / 2.
  auto residual = [&](const Vector& y) {
    Vector f(n + 1);
    const Vector rel = a - y;
    for (int m = 0; m < n; ++m) f(m) = rel.dot(left[m] * y) + b(m);
    f(n) = 0.5 * (rel.squaredNorm() + b.squaredNorm() - 1.0);
    return f;
  };
  auto jacobian = [&](const Vector& y) {
    Matrix j(n + 1, n + 1);
    for (int m = 0; m < n; ++m) {
      j.row(m) = (left[m].transpose() * a - (left[m] + left[m].transpose()) * y).transpose();
    }
    j.row(n) = (y - a).transpose();
    return j;
  };

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  bool any_converged = false;
  Vector outside;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    Vector seed = a;
    if (attempt > 0) {
      for (int i = 0; i <= n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        seed(i) += options.seed_spread * (2.0 * u - 1.0);
      }
    }
    const NewtonResult r = SolveNewton(residual, jacobian, seed, options.newton);
    if (!r.converged) continue;
    if (r.x.norm() < 1.0) return r.x;
    any_converged = true;
    outside = r.x;
  }
  if (any_converged) {
    throw Error(ErrorCode::kOutOfRegion,
                "point lies on a sphere with |y| = " + std::to_string(outside.norm()));
  }
  throw Error(ErrorCode::kNotInRegion, "no fiber through the point was found");
}

Fiber VillarceauFiber(double r, double phi, Handedness handedness) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw Error(ErrorCode::kOutOfRegion, "minor radius must lie in [0, 1)");
  }
  if (!std::isfinite(phi)) {
    throw Error(ErrorCode::kInvalidArgument, "rotation angle must be finite");
  }
  const double w = (handedness == Handedness::kRight ? 1.0 : -1.0) * std::sqrt(1.0 - r * r);
  const Matrix rot = RotationZ(phi);

  Fiber f;
  f.n = 1;
  f.center = rot * Vector::Unit(3, 0) * r;
  f.containing_frame.resize(3, 2);
  f.containing_frame.col(0) = rot * Vector::Unit(3, 0);
  f.containing_frame.col(1) = rot * Eigen::Vector3d(0.0, w, r);
  f.normal_frame = rot * Eigen::Vector3d(0.0, -r, w);
  return f;
}

double TorusResidual(const Vector& p, double r) {
  const double s = std::hypot(p(0), p(1)) - 1.0;
  return s * s + p(2) * p(2) - r * r;
}

BialyLocation BialyLocate(const Vector& p) {
  if (p.size() != 3 || !p.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "bialy points live in R^3");
  }
  const double s = std::hypot(p(0), p(1));
  const double r = std::hypot(s - 1.0, p(2));
  if (!(r < 1.0)) {
    throw Error(ErrorCode::kOutOfRegion, "point is not inside the open bialy");
  }
  BialyLocation loc;
  loc.r = r;
  if (r == 0.0) {
    loc.phi = 0.0;
    loc.fiber = VillarceauFiber(0.0, 0.0);
    return loc;
  }
  // On the unrotated circle, s(t) - 1 = r cos t and z(t) = r sin t, so the
  // circle parameter is the angle of p in the meridian half-plane.
  const double t = std::atan2(p(2), s - 1.0);
  const double w = std::sqrt(1.0 - r * r);
  const double azimuth_on_base = std::atan2(w * std::sin(t), r + std::cos(t));
  loc.phi = WrapAngle(std::atan2(p(1), p(0)) - azimuth_on_base);
  loc.fiber = VillarceauFiber(r, loc.phi);

  const Vector rel = p - loc.fiber.center;
  const double off_sphere = std::abs(rel.norm() - 1.0);
  const double off_plane = (loc.fiber.normal_frame.transpose() * rel).norm();
  if (off_sphere > 1e-10 || off_plane > 1e-10) {
    throw Error(ErrorCode::kDegenerateConfiguration,
                "recovered Villarceau circle misses the point");
  }
  return loc;
}

FibrationSpec FibrationSpec::Standard(int n) {
  RequireStandardDim(n);
  FibrationSpec s;
  s.kind = FibrationKind::kStandard;
  s.n = n;
  return s;
}

FibrationSpec FibrationSpec::Bialy() {
  FibrationSpec s;
  s.kind = FibrationKind::kBialy;
  s.n = 1;
  return s;
}

int FibrationSpec::ambient_dim() const {
  switch (kind) {
    case FibrationKind::kStandard: return 2 * n + 1;
    case FibrationKind::kBialy: return 3;
    case FibrationKind::kStacked: return base->ambient_dim() + 1;
  }
  return 0;
}

void FibrationSpec::Validate() const {
  switch (kind) {
    case FibrationKind::kStandard:
      RequireStandardDim(n);
      return;
    case FibrationKind::kBialy:
      if (n != 1) throw Error(ErrorCode::kInvalidArgument, "bialy fibers are circles");
      return;
    case FibrationKind::kStacked:
      if (!base) throw Error(ErrorCode::kInvalidArgument, "stacked spec needs a base");
      base->Validate();
      if (n != base->n) {
        throw Error(ErrorCode::kInvalidArgument, "stacked fiber dimension differs from base");
      }
      if (!(std::isfinite(stack_lower) && std::isfinite(stack_upper) &&
            stack_lower < stack_upper)) {
        throw Error(ErrorCode::kInvalidArgument, "stack interval must satisfy a < b");
      }
      return;
  }
}

FibrationSpec Stack(const FibrationSpec& base, double lower, double upper) {
  base.Validate();
  FibrationSpec s;
  s.kind = FibrationKind::kStacked;
  s.n = base.n;
  s.stack_lower = lower;
  s.stack_upper = upper;
  s.base = std::make_shared<const FibrationSpec>(base);
  s.Validate();
  return s;
}

Fiber LiftFiber(const Fiber& fiber, double t) {
  const int d = fiber.ambient_dim();
  Fiber f;
  f.n = fiber.n;
  f.center.resize(d + 1);
  f.center << fiber.center, t;
  f.containing_frame = Matrix::Zero(d + 1, fiber.containing_frame.cols());
  f.containing_frame.topRows(d) = fiber.containing_frame;
  f.normal_frame = Matrix::Zero(d + 1, fiber.normal_frame.cols() + 1);
  f.normal_frame.topLeftCorner(d, fiber.normal_frame.cols()) = fiber.normal_frame;
  f.normal_frame(d, fiber.normal_frame.cols()) = 1.0;
  return f;
}

Fiber FiberThrough(const FibrationSpec& spec, const Vector& p) {
  spec.Validate();
  if (p.size() != spec.ambient_dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                "point must have " + std::to_string(spec.ambient_dim()) + " coordinates");
  }
  switch (spec.kind) {
    case FibrationKind::kStandard:
      return StandardFiber(spec.n, LocateFiber(spec.n, p));
    case FibrationKind::kBialy:
      return BialyLocate(p).fiber;
    case FibrationKind::kStacked: {
      const double t = p(p.size() - 1);
      if (!(t > spec.stack_lower && t < spec.stack_upper)) {
        throw Error(ErrorCode::kOutOfRegion, "height outside the stacking interval");
      }
      return LiftFiber(FiberThrough(*spec.base, p.head(p.size() - 1)), t);
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown fibration kind");
}

}  // namespace unit_fibers
