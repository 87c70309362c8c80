#include "unit_fibers/geometry.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_util.h"
#include "unit_fibers/skew.h"

namespace unit_fibers {
namespace {

using testing::ExpectErrorCode;
using testing::Vec;

constexpr double kPi = std::numbers::pi;

Fiber Circle(const Vector& center, const Vector& u, const Vector& v) {
  Fiber f;
  f.n = 1;
  f.center = center;
  f.containing_frame.resize(3, 2);
  f.containing_frame << u.normalized(), v.normalized();
  f.normal_frame = OrthogonalComplement(f.containing_frame, 3);
  return f;
}

// Distance from x to a unit circle: sqrt(h^2 + (rho - 1)^2) with h the
// height over the circle's plane and rho the in-plane radius.
double PointToCircle(const Vector& x, const Fiber& c) {
  const Vector rel = x - c.center;
  const double h = (c.normal_frame.transpose() * rel).norm();
  const double rho = (c.containing_frame.transpose() * rel).norm();
  return std::hypot(h, rho - 1.0);
}

double ExactCircleDistance(const Fiber& a, const Fiber& b) {
  auto dist = [&](double t) { return PointToCircle(a.PointAt(Vec({std::cos(t), std::sin(t)})), b); };
  constexpr int kGrid = 20000;
  double best_t = 0.0, best = dist(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double t = 2 * kPi * k / kGrid;
    if (const double v = dist(t); v < best) {
      best = v;
      best_t = t;
    }
  }
  double lo = best_t - 2 * kPi / kGrid, hi = best_t + 2 * kPi / kGrid;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    (dist(m1) < dist(m2) ? hi : lo) = (dist(m1) < dist(m2) ? m2 : m1);
  }
  return std::min(best, dist(0.5 * (lo + hi)));
}

TEST(PairGeometry, OriginAndHalf) {
  const auto g = PairGeometry(1, Vec({0, 0}), Vec({0.5, 0}));
  EXPECT_LT((g.v - Vec({-0.5, 0, 0})).norm(), 1e-15);
  EXPECT_DOUBLE_EQ(g.v_norm_sq, 0.25);
  EXPECT_LT(g.c_y.norm(), 1e-15);
  EXPECT_LT((g.c_z - Vec({0.5, 0, 0})).norm(), 1e-15);
  EXPECT_DOUBLE_EQ(g.r_y, 1.0);
  EXPECT_DOUBLE_EQ(g.r_z, 1.0);
  EXPECT_DOUBLE_EQ(g.d, 0.5);
}

TEST(PairGeometry, SymmetricPair) {
  const auto g = PairGeometry(1, Vec({0.3, 0}), Vec({-0.3, 0}));
  EXPECT_LT((g.v - Vec({0.6, 0, 0})).norm(), 1e-15);
  EXPECT_NEAR(g.v_norm_sq, 0.36, 1e-15);
  EXPECT_NEAR(g.v_norm_sq_parseval, 0.36 + 0.0081 - 0.0081, 1e-15);
}

TEST(PairGeometry, CoincidentThrows) {
  ExpectErrorCode(ErrorCode::kDegeneratePair,
                  [] { (void)PairGeometry(3, Vec({0.1, 0.2, 0, 0}), Vec({0.1, 0.2, 0, 0})); });
}

TEST(PairGeometry, ParsevalIdentity) {
  CampaignRng rng(31);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 10000; ++s) {
      const auto g = PairGeometry(n, rng.InBall(n + 1, 1.0), rng.InBall(n + 1, 1.0));
      ASSERT_LT(std::abs(g.v_norm_sq - g.v_norm_sq_parseval), 1e-10 * g.v_norm_sq);
    }
  }
}

TEST(PairGeometry, AgreesWithPlaneIntersection) {
  CampaignRng rng(32);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 300; ++s) {
      const Vector y = rng.InBall(n + 1, 0.99), z = rng.InBall(n + 1, 0.99);
      const auto g = PairGeometry(n, y, z);
      const Fiber fy = StandardFiber(n, y), fz = StandardFiber(n, z);
      const auto line = AffineIntersect(fy.ContainingPlane(), fz.ContainingPlane());
      ASSERT_TRUE(line.has_value());
      ASSERT_EQ(line->dim(), 1);
      // Same line: both points of g.Line() lie on the intersection and the
      // directions are parallel.
      EXPECT_LT(line->Residual(Vector::Zero(2 * n + 1)), 1e-9);
      EXPECT_LT(line->Residual(g.v), 1e-9);
      // c_y is the foot of the perpendicular from the center.
      EXPECT_LT((g.Line().Project(fy.center) - g.c_y).norm(), 1e-12);
      EXPECT_NEAR(g.d_y_sq, (fy.center - g.c_y).squaredNorm(), 1e-12);
      EXPECT_NEAR(g.d * std::sqrt(g.v_norm_sq), (y - z).squaredNorm(), 1e-10);
      EXPECT_NEAR(g.d, (g.c_y - g.c_z).norm(), 1e-10);
      // The crossing points lie on the sphere.
      const Vector u = g.v.normalized();
      for (double sgn : {-1.0, 1.0}) {
        const Vector p = g.c_y + sgn * g.r_y * u;
        EXPECT_NEAR((p - fy.center).norm(), 1.0, 1e-10);
        EXPECT_LT((fy.normal_frame.transpose() * (p - fy.center)).norm(), 1e-10);
      }
    }
  }
}

TEST(CertifyDisjoint, HandEvaluatedMargins) {
  const auto c = CertifyDisjoint(PairGeometry(1, Vec({0, 0}), Vec({0.5, 0})));
  EXPECT_EQ(c.verdict, CertificateVerdict::kCertifiedDisjoint);
  EXPECT_DOUBLE_EQ(c.margins[0], 1.5);
  EXPECT_DOUBLE_EQ(c.margins[1], 0.5);
  EXPECT_DOUBLE_EQ(c.margins[2], 0.5);
}

TEST(CertifyDisjoint, BoundaryIsInconclusive) {
  const auto c = CertifyDisjoint(1.0, 1.0, 0.0);
  EXPECT_EQ(c.verdict, CertificateVerdict::kInconclusive);
  EXPECT_EQ(c.margins[0], 2.0);
  EXPECT_EQ(c.margins[1], 0.0);
  EXPECT_EQ(c.margins[2], 0.0);
}

TEST(CertifyDisjoint, OutsideBallCanFail) {
  // With |y| > 1 the sphere can miss the line entirely.
  const auto g = PairGeometry(1, Vec({3.0, 0}), Vec({0, 3.0}));
  EXPECT_EQ(CertifyDisjoint(g).verdict, CertificateVerdict::kInconclusive);
}

TEST(CertifyDisjoint, RandomPairsInBall) {
  CampaignRng rng(33);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 10000; ++s) {
      const auto g = PairGeometry(n, rng.InBall(n + 1, 1.0), rng.InBall(n + 1, 1.0));
      ASSERT_EQ(CertifyDisjoint(g).verdict, CertificateVerdict::kCertifiedDisjoint);
    }
  }
}

TEST(CertifyDisjoint, SoundAgainstSampling) {
  CampaignRng rng(34);
  for (auto [n, count] : {std::pair{1, 200}, {3, 50}, {7, 50}}) {
    for (int s = 0; s < count; ++s) {
      const Vector y = rng.InBall(n + 1, 0.99), z = rng.InBall(n + 1, 0.99);
      if (CertifyDisjoint(PairGeometry(n, y, z)).verdict !=
          CertificateVerdict::kCertifiedDisjoint) {
        continue;
      }
      ASSERT_GT(MinDistanceSampled(StandardFiber(n, y), StandardFiber(n, z), 4096), 0.0);
    }
  }
}

TEST(IntersectSphere, GreatCircle) {
  const Fiber ball = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 0, 1}));
  // Plane z = 0 cuts the xz circle in two points.
  const auto s = IntersectSphere(ball, AffineSubspace(Vec({0, 0, 0}), Matrix::Identity(3, 2)));
  ASSERT_EQ(s.kind, SphereSection::Kind::kSphere);
  EXPECT_DOUBLE_EQ(s.radius, 1.0);

  Fiber sphere2;
  sphere2.n = 2;
  sphere2.center = Vec({0, 0, 0});
  sphere2.containing_frame = Matrix::Identity(3, 3);
  sphere2.normal_frame = Matrix(3, 0);
  const auto great = IntersectSphere(sphere2, AffineSubspace(Vec({0, 0, 0}), Matrix::Identity(3, 2)));
  ASSERT_EQ(great.kind, SphereSection::Kind::kSphere);
  EXPECT_EQ(great.frame.cols(), 2);
  EXPECT_DOUBLE_EQ(great.radius, 1.0);

  const auto top = IntersectSphere(sphere2, AffineSubspace(Vec({0, 0, 1}), Matrix::Identity(3, 2)));
  ASSERT_EQ(top.kind, SphereSection::Kind::kPoint);
  EXPECT_LT((top.center - Vec({0, 0, 1})).norm(), 1e-15);

  const auto miss = IntersectSphere(sphere2, AffineSubspace(Vec({0, 0, 1.5}), Matrix::Identity(3, 2)));
  EXPECT_EQ(miss.kind, SphereSection::Kind::kEmpty);
}

TEST(IntersectSphere, StandardFiberCrossesXAxis) {
  const Fiber f = StandardFiber(1, Vec({0.5, 0}));
  const auto s = IntersectSphere(f, AffineSubspace(Vec({0, 0, 0}), Matrix::Identity(3, 2)));
  ASSERT_EQ(s.kind, SphereSection::Kind::kSphere);
  ASSERT_EQ(s.frame.cols(), 1);
  auto pts = s.PointPair();
  if (pts[0](0) > pts[1](0)) std::swap(pts[0], pts[1]);
  EXPECT_LT((pts[0] - Vec({-0.5, 0, 0})).norm(), 1e-15);
  EXPECT_LT((pts[1] - Vec({1.5, 0, 0})).norm(), 1e-15);
}

TEST(Linked, HopfLikePair) {
  const Fiber a = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  const Fiber b = Circle(Vec({1, 0, 0}), Vec({1, 0, 0}), Vec({0, 0, 1}));
  EXPECT_TRUE(Linked(a, b));
  EXPECT_TRUE(Linked(b, a));
}

TEST(Linked, CoplanarCirclesAreUnlinked) {
  const Fiber a = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  const Fiber b = Circle(Vec({5, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  EXPECT_FALSE(Linked(a, b));
  EXPECT_FALSE(Linked(b, a));
}

TEST(Linked, StandardPair) {
  const Fiber a = StandardFiber(1, Vec({0, 0}));
  const Fiber b = StandardFiber(1, Vec({0.5, 0}));
  EXPECT_TRUE(Linked(a, b));
  EXPECT_TRUE(Linked(b, a));
}

TEST(Linked, SeparatedChainIsUnlinked) {
  const Fiber a = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  const Fiber b = Circle(Vec({3, 0, 0}), Vec({1, 0, 0}), Vec({0, 0, 1}));
  EXPECT_FALSE(Linked(a, b));
  EXPECT_FALSE(Linked(b, a));
}

TEST(Linked, Errors) {
  const Fiber a = StandardFiber(1, Vec({0.1, 0.2}));
  ExpectErrorCode(ErrorCode::kUndefinedLinkedness, [&] { (void)Linked(a, a); });
  // Two circles through a common point.
  const Fiber c = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  const Fiber d = Circle(Vec({2, 0, 0}), Vec({1, 0, 0}), Vec({0, 0, 1}));
  ExpectErrorCode(ErrorCode::kUndefinedLinkedness, [&] { (void)Linked(c, d); });
  ExpectErrorCode(ErrorCode::kInvalidArgument,
                  [&] { (void)Linked(a, StandardFiber(3, Vec({0, 0, 0, 0}))); });
  ExpectErrorCode(ErrorCode::kInvalidArgument, [&] { (void)Linked(LiftFiber(a, 0), LiftFiber(c, 1)); });
}

TEST(Linked, ConstructionIsPairwiseLinkedAndSymmetric) {
  CampaignRng rng(35);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 1000; ++s) {
      const Fiber a = StandardFiber(n, rng.InBall(n + 1, 0.95));
      const Fiber b = StandardFiber(n, rng.InBall(n + 1, 0.95));
      ASSERT_TRUE(Linked(a, b));
      ASSERT_TRUE(Linked(b, a));
    }
  }
}

TEST(Linked, BialyGridPairwiseDisjointAndLinked) {
  std::vector<Fiber> fibers;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      fibers.push_back(VillarceauFiber((i + 0.5) / 20.0, 2 * kPi * j / 20.0));
    }
  }
  for (std::size_t a = 0; a < fibers.size(); ++a) {
    for (std::size_t b = a + 1; b < fibers.size(); ++b) {
      ASSERT_GT(MinDistanceSampled(fibers[a], fibers[b], 48), 0.0);
      ASSERT_TRUE(Linked(fibers[a], fibers[b])) << a << " " << b;
      ASSERT_TRUE(Linked(fibers[b], fibers[a])) << a << " " << b;
    }
  }
}

TEST(MinDistanceSampled, ParallelCircles) {
  const Fiber a = Circle(Vec({0, 0, 0}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  const Fiber b = Circle(Vec({0, 0, 3}), Vec({1, 0, 0}), Vec({0, 1, 0}));
  EXPECT_NEAR(MinDistanceSampled(a, b, 1024), 3.0, 1e-9);
}

TEST(MinDistanceSampled, SameFiberIsZero) {
  for (int n : {1, 3, 7}) {
    const Fiber f = StandardFiber(n, Vector::Constant(n + 1, 0.2));
    EXPECT_EQ(MinDistanceSampled(f, f, 256), 0.0);
  }
}

TEST(MinDistanceSampled, AgreesWithExactCircleDistance) {
  const Fiber a = StandardFiber(1, Vec({0, 0}));
  const Fiber b = StandardFiber(1, Vec({0.5, 0}));
  const double sampled = MinDistanceSampled(a, b, 4096);
  const double exact = ExactCircleDistance(a, b);
  EXPECT_GT(sampled, 0.0);
  EXPECT_NEAR(sampled, exact, 0.1 * exact);
  // The crossings on the shared line are 0.5 apart, which bounds the
  // distance from above.
  const auto cert = CertifyDisjoint(PairGeometry(1, Vec({0, 0}), Vec({0.5, 0})));
  EXPECT_LE(exact, std::min({cert.margins[0], cert.margins[1], cert.margins[2]}) + 1e-12);
}

TEST(SphereSamples, UnitNorm) {
  for (int n : {1, 3, 7}) {
    const Matrix s = SphereSamples(n, 500, 9);
    for (Eigen::Index k = 0; k < s.cols(); ++k) EXPECT_NEAR(s.col(k).norm(), 1.0, 1e-14);
  }
  ExpectErrorCode(ErrorCode::kInvalidArgument, [] { (void)SphereSamples(1, 1); });
}

}  // namespace
}  // namespace unit_fibers
