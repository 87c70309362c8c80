#include "unit_fibers/fibration.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_util.h"
#include "unit_fibers/geometry.h"

namespace unit_fibers {
namespace {

using testing::ExpectErrorCode;
using testing::Projector;
using testing::Vec;

constexpr double kPi = std::numbers::pi;

TEST(StandardFiber, OriginCircle) {
  const Fiber f = StandardFiber(1, Vec({0, 0}));
  EXPECT_EQ(f.center, Vec({0, 0, 0}));
  ASSERT_EQ(f.normal_frame.cols(), 1);
  EXPECT_EQ(Vector(f.normal_frame.col(0)), Vec({0, 0, 1}));
  EXPECT_LT((Projector(f.containing_frame) - Projector(Matrix::Identity(3, 2))).norm(), 1e-15);
}

TEST(StandardFiber, TiltedCircle) {
  // i * (0.5, 0) = (0, 0.5), so the normal is (0, 0.5, 1) normalized.
  const Fiber f = StandardFiber(1, Vec({0.5, 0}));
  EXPECT_EQ(f.center, Vec({0.5, 0, 0}));
  const Vector expect = Vec({0, 0.5, 1}).normalized();
  EXPECT_LT((Vector(f.normal_frame.col(0)) - expect).norm(), 1e-15);
}

TEST(StandardFiber, QuaternionGenerators) {
  const Fiber f = StandardFiber(3, Vec({0.5, 0, 0, 0}));
  Matrix gens(7, 3);
  gens.col(0) = Vec({0, 0.5, 0, 0, 1, 0, 0});
  gens.col(1) = Vec({0, 0, 0.5, 0, 0, 1, 0});
  gens.col(2) = Vec({0, 0, 0, 0.5, 0, 0, 1});
  // Independent orthonormalization by Householder QR.
  const Matrix q = Eigen::HouseholderQR<Matrix>(gens).householderQ() * Matrix::Identity(7, 3);
  EXPECT_LT((Projector(f.normal_frame) - Projector(q)).norm(), 1e-14);
  EXPECT_LT(f.FrameError(), 1e-10);
}

TEST(StandardFiber, RegionChecks) {
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)StandardFiber(1, Vec({1, 0})); });
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)StandardFiber(3, Vec({0.8, 0.8, 0, 0})); });
  EXPECT_NO_THROW((void)StandardFiber(1, Vec({1.5, 0}), /*force=*/true));
  ExpectErrorCode(ErrorCode::kInvalidArgument, [] { (void)StandardFiber(2, Vec({0, 0, 0})); });
  ExpectErrorCode(ErrorCode::kInvalidArgument, [] { (void)StandardFiber(3, Vec({0, 0})); });
}

TEST(StandardFiber, FramesAreOrthonormalBasis) {
  CampaignRng rng(21);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 2000; ++s) {
      const Fiber f = StandardFiber(n, rng.InBall(n + 1, 0.999));
      ASSERT_EQ(f.containing_frame.cols(), n + 1);
      ASSERT_EQ(f.normal_frame.cols(), n);
      ASSERT_LT(f.FrameError(), 1e-10);
      // Normal frame spans the generators (e_m y, delta_m).
      const Matrix gens = StandardNormalGenerators(n, f.center.head(n + 1));
      ASSERT_LT((gens - Projector(f.normal_frame) * gens).norm(), 1e-12);
    }
  }
}

TEST(StandardFiber, CenterAndNormalAreContinuous) {
  CampaignRng rng(22);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 500; ++s) {
      const Vector y = rng.InBall(n + 1, 0.9);
      Vector dy = rng.InBall(n + 1, 1.0);
      dy *= 1e-6 / dy.norm();
      const Fiber a = StandardFiber(n, y);
      const Fiber b = StandardFiber(n, y + dy);
      EXPECT_NEAR((b.center - a.center).norm(), dy.norm(), 1e-15);
      const double dp = (Projector(b.normal_frame) - Projector(a.normal_frame)).norm();
      EXPECT_LE(dp, 100.0 * dy.norm());
    }
  }
}

TEST(VillarceauFiber, DegenerateTorusGivesCore) {
  const Fiber f = VillarceauFiber(0.0, 0.0);
  EXPECT_EQ(f.center, Vec({0, 0, 0}));
  EXPECT_EQ(Vector(f.normal_frame.col(0)), Vec({0, 0, 1}));
}

TEST(VillarceauFiber, ThroughOuterAndInnerEquator) {
  const Fiber f = VillarceauFiber(0.6, 0.0, Handedness::kRight);
  EXPECT_LT((f.center - Vec({0.6, 0, 0})).norm(), 1e-15);
  EXPECT_LT((f.PointAt(Vec({1, 0})) - Vec({1.6, 0, 0})).norm(), 1e-15);
  EXPECT_LT((f.PointAt(Vec({-1, 0})) - Vec({-0.4, 0, 0})).norm(), 1e-15);
}

TEST(VillarceauFiber, PointsLieOnTorus) {
  for (double r : {0.0, 0.1, 0.35, 0.6, 0.9, 0.999}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      for (auto h : {Handedness::kRight, Handedness::kLeft}) {
        const Fiber f = VillarceauFiber(r, phi, h);
        EXPECT_LT(f.FrameError(), 1e-12);
        for (int k = 0; k < 256; ++k) {
          const double t = 2 * kPi * k / 256;
          const Vector p = f.PointAt(Vec({std::cos(t), std::sin(t)}));
          EXPECT_LT(std::abs(TorusResidual(p, r)), 1e-12);
          EXPECT_NEAR((p - f.center).norm(), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(VillarceauFiber, RotationEquivariance) {
  const double phi = 0.73;
  Matrix rot = Matrix::Identity(3, 3);
  rot.topLeftCorner(2, 2) << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  const Fiber base = VillarceauFiber(0.4, 0.0);
  const Fiber turned = VillarceauFiber(0.4, phi);
  EXPECT_LT((rot * base.center - turned.center).norm(), 1e-15);
  EXPECT_LT((rot * base.containing_frame - turned.containing_frame).norm(), 1e-15);
}

TEST(VillarceauFiber, LeftFamilyIsMirrorImage) {
  const Matrix mirror = Vec({1, -1, 1}).asDiagonal();
  const Fiber right = VillarceauFiber(0.3, 0.0, Handedness::kRight);
  const Fiber left = VillarceauFiber(0.3, 0.0, Handedness::kLeft);
  EXPECT_LT((mirror * right.containing_frame - left.containing_frame).norm(), 1e-15);
}

TEST(VillarceauFiber, RejectsRadiusOutsideUnitInterval) {
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)VillarceauFiber(1.0, 0.0); });
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)VillarceauFiber(-0.1, 0.0); });
}

TEST(BialyLocate, CorePoint) {
  const auto loc = BialyLocate(Vec({1, 0, 0}));
  EXPECT_EQ(loc.r, 0.0);
  EXPECT_EQ(loc.phi, 0.0);
  EXPECT_EQ(loc.fiber, VillarceauFiber(0.0, 0.0));
}

TEST(BialyLocate, OuterEquatorPoint) {
  const auto loc = BialyLocate(Vec({1.6, 0, 0}));
  EXPECT_NEAR(loc.r, 0.6, 1e-15);
  const Fiber expect = VillarceauFiber(0.6, 0.0);
  EXPECT_LT((loc.fiber.center - expect.center).norm(), 1e-12);
  EXPECT_LT((Projector(loc.fiber.containing_frame) - Projector(expect.containing_frame)).norm(),
            1e-12);
}

TEST(BialyLocate, OutsideThrows) {
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)BialyLocate(Vec({2.1, 0, 0})); });
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)BialyLocate(Vec({2.0, 0, 0})); });
  ExpectErrorCode(ErrorCode::kOutOfRegion, [] { (void)BialyLocate(Vec({0, 0, 0})); });
}

TEST(BialyLocate, RoundTrip) {
  CampaignRng rng(23);
  for (int s = 0; s < 5000; ++s) {
    const double r = 0.999 * rng.Uniform();
    const double phi = 2 * kPi * rng.Uniform();
    const double t = 2 * kPi * rng.Uniform();
    const Fiber f = VillarceauFiber(r, phi);
    const Vector p = f.PointAt(Vec({std::cos(t), std::sin(t)}));
    const auto loc = BialyLocate(p);
    EXPECT_NEAR(loc.r, r, 1e-12);
    const double dphi = std::remainder(loc.phi - phi, 2 * kPi);
    EXPECT_LT(std::abs(dphi), 1e-9) << "r=" << r;
    EXPECT_NEAR((p - loc.fiber.center).norm(), 1.0, 1e-10);
  }
}

TEST(LocateFiber, PointOnOriginCircle) {
  const Vector y = LocateFiber(1, Vec({1, 0, 0}));
  EXPECT_LT(y.norm(), 1e-12);
}

TEST(LocateFiber, ForcedContradiction) {
  ExpectErrorCode(ErrorCode::kNotInRegion, [] { (void)LocateFiber(1, Vec({0, 0, 1})); });
}

TEST(LocateFiber, RoundTrip) {
  CampaignRng rng(24);
  for (int n : {1, 3, 7}) {
    for (int s = 0; s < 300; ++s) {
      const Vector y = rng.InBall(n + 1, 0.9);
      const Fiber f = StandardFiber(n, y);
      const Vector p = f.PointAt(rng.InBall(n + 1, 1.0).normalized());
      const Vector got = LocateFiber(n, p);
      ASSERT_LT((got - y).norm(), 1e-8) << "n=" << n << " sample " << s;
    }
  }
}

TEST(Stack, LiftsCirclesIntoR4) {
  const auto spec = Stack(FibrationSpec::Standard(1), -1.0, 1.0);
  EXPECT_EQ(spec.ambient_dim(), 4);
  const Fiber f = LiftFiber(StandardFiber(1, Vec({0.3, 0.1})), 0.25);
  EXPECT_EQ(f.ambient_dim(), 4);
  EXPECT_LT(f.FrameError(), 1e-12);
  for (int k = 0; k < 16; ++k) {
    const double t = 2 * kPi * k / 16;
    EXPECT_EQ(f.PointAt(Vec({std::cos(t), std::sin(t)}))(3), 0.25);
  }
}

TEST(Stack, LocateSplitsHeight) {
  const auto base = FibrationSpec::Standard(1);
  const auto spec = Stack(base, 0.0, 2.0);
  const Fiber f = StandardFiber(1, Vec({0.2, -0.4}));
  const Vector p = f.PointAt(Vec({0.6, 0.8}));
  Vector lifted(4);
  lifted << p, 1.5;
  EXPECT_EQ(FiberThrough(spec, lifted), LiftFiber(FiberThrough(base, p), 1.5));
  lifted(3) = 2.0;
  ExpectErrorCode(ErrorCode::kOutOfRegion, [&] { (void)FiberThrough(spec, lifted); });
}

TEST(Stack, DistinctHeightsAreDisjoint) {
  const Fiber base = VillarceauFiber(0.5, 0.2);
  const Fiber a = LiftFiber(base, 0.1), b = LiftFiber(base, 0.4);
  EXPECT_NEAR(MinDistanceSampled(a, b, 256), 0.3, 1e-12);
}

TEST(Stack, StackedBialyLocates) {
  const auto spec = Stack(FibrationSpec::Bialy(), -1.0, 1.0);
  const Fiber f = FiberThrough(spec, Vec({1.3, 0.2, 0.1, -0.5}));
  EXPECT_EQ(f.center(3), -0.5);
  EXPECT_EQ(f.normal_frame.cols(), 2);
}

TEST(FibrationSpec, Validation) {
  FibrationSpec bad = FibrationSpec::Standard(1);
  bad.n = 5;
  ExpectErrorCode(ErrorCode::kInvalidArgument, [&] { bad.Validate(); });
  ExpectErrorCode(ErrorCode::kInvalidArgument,
                  [] { (void)Stack(FibrationSpec::Bialy(), 1.0, 1.0); });
}

}  // namespace
}  // namespace unit_fibers
