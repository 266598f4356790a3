#include "qso/spectral.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qso/error.h"

namespace qso {
namespace {

std::vector<double> Moduli(const std::vector<std::complex<double>>& z) {
  std::vector<double> m;
  for (const auto& v : z) m.push_back(std::abs(v));
  std::sort(m.begin(), m.end());
  return m;
}

TEST(Lyapunov, ProductOfBracketsBoundedByOne) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(-1, 1);
  double worst = -1;
  for (int t = 0; t < 20000; ++t) worst = std::max(worst, Psi(RandomSimplexPoint(5, rng), up(rng)) - 1);
  EXPECT_LE(worst, 1e-12);
  EXPECT_DOUBLE_EQ(Psi(FivePhaseBarycenter(), 0.8), 1.0);
  EXPECT_DOUBLE_EQ(Psi(RandomSimplexPoint(5, rng), 0.0), 1.0);
}

TEST(Lyapunov, PsiIsTheRatioOfPhi) {
  std::mt19937_64 rng(12);
  for (double p : {-1.0, -0.4, 0.3, 1.0}) {
    for (int t = 0; t < 200; ++t) {
      const oracle::Vec5 x = oracle::RandomInterior(rng);
      const oracle::Vec5 y = oracle::SymmetricW(p, x);
      const double ratio = (y[0] * y[1] * y[2] * y[3] * y[4]) / (x[0] * x[1] * x[2] * x[3] * x[4]);
      ASSERT_NEAR(Psi(SimplexPoint::Make(std::vector<double>(x.begin(), x.end())), p), ratio, 1e-12 * ratio);
    }
  }
  EXPECT_EQ(Phi(SimplexPoint::Make({0.5, 0.5, 0, 0, 0})), 0.0);
}

TEST(FixedPoint, BarycenterIsTheOnlyRoot) {
  for (double p : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    const FixedPointSearch s = FindFixedPoints(w, 100, 99);
    ASSERT_EQ(s.roots.size(), 1u) << p;
    EXPECT_LE(Dist(s.roots[0], FivePhaseBarycenter()), 1e-12);
    EXPECT_LE(FixedPointResidual(w, FivePhaseBarycenter()), 1e-14);
    EXPECT_EQ(Dist(FindFixedPointSymmetric(SymmetricParam(p)), FivePhaseBarycenter()), 0.0);
  }
}

TEST(FixedPoint, HalfParametersGiveTheShift) {
  const FixedPointSearch s = FindFixedPointsGeneral(CfepParams{}, 50, 3);
  ASSERT_EQ(s.roots.size(), 1u);
  EXPECT_LE(Dist(s.roots[0], FivePhaseBarycenter()), 1e-12);
}

TEST(FixedPoint, GeneralRootsAreFixed) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int t = 0; t < 5; ++t) {
    CfepParams c;
    for (double* f : {&c.a, &c.b, &c.c, &c.d, &c.alpha, &c.beta, &c.gamma, &c.delta, &c.theta, &c.omega}) *f = u(rng);
    const FixedPointSearch s = FindFixedPointsGeneral(c, 30, t);
    ASSERT_FALSE(s.roots.empty());
    for (const SimplexPoint& r : s.roots) {
      EXPECT_LE(FixedPointResidual(Operator::CfepW(c), r), 1e-10);
      EXPECT_EQ(ZeroCount(r), 0);
    }
  }
}

TEST(Quartic, CoefficientsMatchTranscription) {
  for (int i = 0; i <= 40; ++i) {
    const double q = -0.2 + 0.01 * i;
    const QuarticCoeffs c = CharacteristicQuartic(q);
    const auto ref = oracle::Quartic(q);
    EXPECT_EQ(c.c4, ref[0]);
    EXPECT_NEAR(c.c3, ref[1], 1e-15);
    EXPECT_NEAR(c.c2, ref[2], 1e-15);
    EXPECT_NEAR(c.c1, ref[3], 1e-15);
    EXPECT_NEAR(c.c0, ref[4], 1e-15);
  }
  EXPECT_THROW(CharacteristicQuartic(0.21), Error);
}

TEST(Quartic, IsTheTangentCharacteristicPolynomial) {
  for (double q : {-0.2, -0.1, -0.04, 0.04, 0.1, 0.2}) {
    const Operator w = Operator::SymmetricW(SymmetricParam(5 * q));
    const auto jac = Moduli(TangentSpectrum(w, FivePhaseBarycenter()));
    const auto quartic = Moduli(QuarticRoots(CharacteristicQuartic(q)));
    ASSERT_EQ(jac.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(jac[i], quartic[i], 1e-9);
    // The full Jacobian adds the eigenvalue 1 along the simplex normal.
    const Eigen::MatrixXd full = JacobianAt(w, FivePhaseBarycenter());
    EXPECT_NEAR((Eigen::RowVectorXd::Ones(5) * full - Eigen::RowVectorXd::Ones(5)).norm(), 0.0, 1e-14);
  }
}

TEST(Quartic, SquaredModuliAreTheClosedForms) {
  for (double q : {-0.2, -0.1, -0.04, 0.04, 0.1, 0.2}) {
    const auto m = Moduli(QuarticRoots(CharacteristicQuartic(q)));
    const auto [f1, f2] = EigenModuli(q);
    EXPECT_NEAR(m[0] * m[0], f1, 1e-9);
    EXPECT_NEAR(m[1] * m[1], f1, 1e-9);
    EXPECT_NEAR(m[2] * m[2], f2, 1e-9);
    EXPECT_NEAR(m[3] * m[3], f2, 1e-9);
  }
}

TEST(Quartic, DiscriminantNegative) {
  for (int i = 0; i <= 400; ++i) EXPECT_LT(DiscriminantD(-0.2 + 0.001 * i), 0.0);
}

TEST(PolynomialRoots, KnownRoots) {
  // (x - 1)(x - 2)(x^2 + 1)
  const auto r = PolynomialRoots({1, -3, 3, -3, 2});
  std::vector<double> re;
  for (const auto& z : r) re.push_back(std::abs(z));
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 1, 1e-12);
  EXPECT_NEAR(re[1], 1, 1e-12);
  EXPECT_NEAR(re[2], 1, 1e-12);
  EXPECT_NEAR(re[3], 2, 1e-12);
}

TEST(Stability, BarycenterRepelsForNonzeroParameter) {
  for (double p : {-1.0, -0.2, 0.2, 1.0}) {
    const StabilityReport r = ClassifyStability(Operator::SymmetricW(SymmetricParam(p)), FivePhaseBarycenter());
    EXPECT_EQ(r.classification, Stability::kRepeller) << p;
    for (double m : r.moduli) EXPECT_GT(m, 1.0);
  }
  EXPECT_EQ(ClassifyStability(Operator::SymmetricW(SymmetricParam(0)), FivePhaseBarycenter()).classification,
            Stability::kNonhyperbolic);
  EXPECT_THROW(ClassifyStability(Operator::SymmetricW(SymmetricParam(0.5)), SimplexPoint::Make({0.3, 0.1, 0.2, 0.2, 0.2})),
               Error);
}

TEST(Stability, TangentBasisIsOrthonormal) {
  const Eigen::MatrixXd b = TangentBasis(5);
  EXPECT_NEAR((b.transpose() * b - Eigen::MatrixXd::Identity(4, 4)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((Eigen::RowVectorXd::Ones(5) * b).norm(), 0.0, 1e-14);
}

}  // namespace
}  // namespace qso
