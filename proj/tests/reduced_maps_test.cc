#include "qso/reduced_maps.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qso/error.h"

namespace qso {
namespace {

SimplexPoint Embed(std::initializer_list<double> head) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  int i = 0;
  for (double v : head) x[i++] = v;
  return SimplexPoint::Normalize(x);
}

const double kPs[] = {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0};

TEST(EdgeMaps, MatchTheExplicitWalks) {
  for (double p : kPs) {
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      EXPECT_NEAR(EdgeF(SymmetricParam(p), x), oracle::AdjacentEdgeReturn(p, x), 1e-15);
      EXPECT_NEAR(EdgeG(SymmetricParam(p), x), oracle::SkipEdgeReturn(p, x), 1e-15);
    }
  }
  EXPECT_THROW(EdgeF(SymmetricParam(0.5), 1.5), Error);
}

TEST(EdgeMaps, MatchEmbeddedFifthPower) {
  for (double p : kPs) {
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      const SimplexPoint adjacent = Power(w, Embed({x, 1 - x}), 5);
      const SimplexPoint skip = Power(w, Embed({x, 0, 1 - x}), 5);
      EXPECT_NEAR(EdgeF(SymmetricParam(p), x), adjacent[0], 1e-12);
      EXPECT_NEAR(1 - EdgeF(SymmetricParam(p), x), adjacent[1], 1e-12);
      EXPECT_NEAR(EdgeG(SymmetricParam(p), x), skip[0], 1e-12);
      EXPECT_NEAR(1 - EdgeG(SymmetricParam(p), x), skip[2], 1e-12);
    }
  }
}

TEST(EdgeMaps, EndpointDerivatives) {
  for (double p : kPs) {
    const EdgeDerivatives d = EdgeDerivativesAt(SymmetricParam(p));
    EXPECT_NEAR(d.F0, std::pow(1 + p, 5), 1e-14);
    EXPECT_NEAR(d.F1, std::pow(1 - p, 5), 1e-14);
    EXPECT_NEAR(d.G0, std::pow(1 - p, 5), 1e-14);
    EXPECT_NEAR(d.G1, std::pow(1 + p, 5), 1e-14);
    const double h = 1e-6;
    EXPECT_NEAR((oracle::AdjacentEdgeReturn(p, h) - oracle::AdjacentEdgeReturn(p, -h)) / (2 * h), d.F0, 1e-5);
    EXPECT_NEAR((oracle::SkipEdgeReturn(p, 1 + h) - oracle::SkipEdgeReturn(p, 1 - h)) / (2 * h), d.G1, 1e-5);
  }
}

TEST(EdgeMaps, ComponentSlopePositive) {
  for (double p : kPs) {
    const EdgeMaps maps{SymmetricParam(p)};
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0, h = 1e-7;
      if (i > 0 && i < 1000) EXPECT_GT(maps.f(x + h) - maps.f(x - h), 0.0);
    }
  }
}

TEST(EdgeLimit, Tables) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (double p : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
    for (int t = 0; t < 20; ++t) {
      const double x0 = u(rng);
      // x^(5k) -> e1 means the first coordinate tends to 1.
      EXPECT_EQ(EdgeLimit(SymmetricParam(p), x0, EdgeReturnMap::kF).limit, oracle::AdjacentEdgePhase(p) == 0 ? 1 : 0);
      EXPECT_EQ(EdgeLimit(SymmetricParam(p), x0, EdgeReturnMap::kG).limit, oracle::SkipEdgePhase(p) == 0 ? 1 : 0);
    }
  }
  EXPECT_THROW(EdgeLimit(SymmetricParam(0), 0.5, EdgeReturnMap::kF), Error);
}

TEST(FaceMaps, BIsRelabelledA) {
  std::mt19937_64 rng(32);
  for (double p : kPs) {
    const FaceOperator a(FaceKind::kA, SymmetricParam(p)), b(FaceKind::kB, SymmetricParam(p)),
        tau(FaceKind::kTau, SymmetricParam(p));
    for (int t = 0; t < 50; ++t) {
      const SimplexPoint x = RandomSimplexPoint(3, rng);
      EXPECT_LE(Dist(b.Apply(x), tau.Apply(a.Apply(x))), 1e-14);
      EXPECT_LE(Dist(b.Apply(x), a.Apply(tau.Apply(x))), 1e-14);
      EXPECT_EQ(Dist(tau.Apply(tau.Apply(tau.Apply(x))), x), 0.0);
      SimplexPoint an = x, bn = x;
      for (int n = 1; n <= 6; ++n) {
        an = a.Apply(an);
        bn = b.Apply(bn);
      }
      EXPECT_LE(Dist(an, bn), 1e-13);
    }
  }
}

TEST(FaceMaps, CaseOneMatchesEmbeddedFifthPower) {
  std::mt19937_64 rng(33);
  for (double p : kPs) {
    const SymmetricParam sp(p);
    for (int t = 0; t < 50; ++t) {
      const SimplexPoint x = RandomSimplexPoint(3, rng);
      const FaceCase1Result r = FaceCase1Reduction(sp, x);
      ASSERT_EQ(r.route.size(), 6u);
      const SimplexPoint full = Power(Operator::SymmetricW(sp), Embed({x[0], x[1], x[2]}), 5);
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.a_power[i], full[i], 1e-12);
      EXPECT_EQ(full[3], 0.0);
      EXPECT_EQ(full[4], 0.0);
    }
  }
}

TEST(FaceMaps, HatVReachesTheTableVertex) {
  std::mt19937_64 rng(34);
  for (double p : {-0.8, -0.3, 0.3, 0.8}) {
    for (int t = 0; t < 20; ++t) {
      const HatVLimitResult r = HatVLimit(SymmetricParam(p), RandomSimplexPoint(3, rng));
      EXPECT_EQ(r.vertex, p > 0 ? 0 : 1);
      EXPECT_EQ(r.monotonicity_violations, 0);
    }
  }
  EXPECT_THROW(HatVLimit(SymmetricParam(0.5), SimplexPoint::Make({0.5, 0.5, 0})), Error);
}

TEST(FaceMaps, HatVMatchesSkipFaceFifthPower) {
  std::mt19937_64 rng(35);
  for (double p : kPs) {
    const FaceOperator hat(FaceKind::kHatV, SymmetricParam(p));
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    for (int t = 0; t < 20; ++t) {
      const SimplexPoint y = RandomSimplexPoint(3, rng);
      SimplexPoint h = y;
      for (int i = 0; i < 5; ++i) h = hat.Apply(h);
      const SimplexPoint full = Power(w, Embed({y[0], y[1], 0, y[2]}), 5);
      EXPECT_NEAR(full[0], h[0], 1e-12);
      EXPECT_NEAR(full[1], h[1], 1e-12);
      EXPECT_NEAR(full[3], h[2], 1e-12);
    }
  }
}

TEST(FaceMaps, TildeVKeepsFaces) {
  std::mt19937_64 rng(36);
  const FaceOperator v(FaceKind::kTildeV, SymmetricParam(0.7));
  for (int zero = 0; zero < 4; ++zero) {
    Eigen::VectorXd x = RandomSimplexPoint(4, rng).coords();
    x[zero] = 0;
    SimplexPoint y = SimplexPoint::Normalize(x);
    for (int n = 0; n < 50; ++n) {
      y = v.Apply(y);
      ASSERT_EQ(y[zero], 0.0);
    }
  }
}

TEST(Segment, ScalarMap) {
  for (double p : kPs) {
    EXPECT_EQ(SegmentPsi(p, 0), 0.0);
    EXPECT_DOUBLE_EQ(SegmentPsi(p, 1.0 / 3), 1.0 / 3);
    EXPECT_DOUBLE_EQ(SegmentPsiDerivative(p, 0), 1 + p / 3);
    EXPECT_DOUBLE_EQ(SegmentPsiDerivative(p, 1.0 / 3), 1 - p / 3);
  }
  EXPECT_DOUBLE_EQ(SegmentUFromS(SegmentSFromU(0.1)), 0.1);
  EXPECT_EQ(Dist(SegmentPoint(1.0 / 3), SegmentM()), 0.0);
  EXPECT_EQ(Dist(SegmentPoint(0), SegmentN()), 0.0);
}

TEST(Segment, InvariantAndLimits) {
  for (double p : kPs)
    for (int i = 0; i <= 30; ++i) EXPECT_LE(SegmentInvarianceResidual(SymmetricParam(p), i / 90.0), 1e-14);
  EXPECT_LE(SegmentInvarianceResidual(SymmetricParam(0.77), 0.2), 1e-15);
  EXPECT_EQ(SegmentLimit(SymmetricParam(0.9), 0.1).endpoint, 'M');
  EXPECT_EQ(SegmentLimit(SymmetricParam(-0.9), 0.1).endpoint, 'N');
  // tilde-V on the segment is the scalar map in u.
  const FaceOperator v(FaceKind::kTildeV, SymmetricParam(0.4));
  EXPECT_NEAR(v.Apply(SegmentPoint(0.1))[0], SegmentPsi(0.4, 0.1), 1e-15);
}

}  // namespace
}  // namespace qso
