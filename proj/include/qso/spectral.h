#ifndef QSO_SPECTRAL_H_
#define QSO_SPECTRAL_H_

#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qso/operators.h"
#include "qso/simplex.h"

namespace qso {

// Product of the five brackets of the one-parameter operator; the ratio
// phi(W(x)) / phi(x).
double Psi(const SimplexPoint& x, double p);
double Psi(const Eigen::VectorXd& x, double p);

// Product of the coordinates.
double Phi(const SimplexPoint& x);

// Max-norm residual |W(x) - x| using the raw (un-normalized) output.
double FixedPointResidual(const Operator& op, const SimplexPoint& x);

// The barycenter, after checking that its residual is at most 1e-14.
SimplexPoint FindFixedPointSymmetric(const SymmetricParam& p);

struct NewtonOptions {
  int max_iterations = 100;
  double step_tolerance = 1e-13;
  double accept_residual = 1e-10;
  double dedup_distance = 1e-6;
};

struct FixedPointSearch {
  std::vector<SimplexPoint> roots;  // distinct, in order of discovery
  std::vector<double> residuals;
  int seeds = 0;
  int no_convergence = 0;  // seeds that did not reach an acceptable root
};

// Multi-start projected Newton on W(x) = x in the coordinates x_1..x_{m-1}
// (x_m = 1 - sum). Seeds are uniform on the simplex interior.
FixedPointSearch FindFixedPoints(const Operator& op, int seeds, std::uint64_t rng_seed,
                                 const NewtonOptions& options = {});
FixedPointSearch FindFixedPointsGeneral(const CfepParams& params, int seeds,
                                        std::uint64_t rng_seed);

// Monic quartic c4 l^4 + c3 l^3 + c2 l^2 + c1 l + c0.
struct QuarticCoeffs {
  double c4 = 1, c3 = 0, c2 = 0, c1 = 0, c0 = 0;
};

// Characteristic polynomial of the linearization at the barycenter, in q = p / 5.
QuarticCoeffs CharacteristicQuartic(double q);
double DiscriminantD(double q);
// Closed forms (5 -+ 2 sqrt 5) q^2 + 1.
std::pair<double, double> EigenModuli(double q);

// Roots of a real polynomial given highest degree first, via the companion matrix.
std::vector<std::complex<double>> PolynomialRoots(const std::vector<double>& coeffs);
std::vector<std::complex<double>> QuarticRoots(const QuarticCoeffs& c);

// m x (m-1) orthonormal basis of {v : sum v = 0}.
Eigen::MatrixXd TangentBasis(int m);

Eigen::MatrixXd JacobianAt(const Operator& op, const SimplexPoint& x);
// B^T J B with B = TangentBasis(m).
Eigen::MatrixXd TangentRestrictedJacobian(const Operator& op, const SimplexPoint& x);
std::vector<std::complex<double>> TangentSpectrum(const Operator& op, const SimplexPoint& x);

enum class Stability { kRepeller, kSaddle, kAttractor, kNonhyperbolic };
std::string_view StabilityName(Stability s);

struct StabilityReport {
  SimplexPoint fixed_point;
  std::vector<std::complex<double>> eigenvalues;  // tangent spectrum
  std::vector<double> moduli;
  Stability classification;
};

inline constexpr double kHyperbolicityMargin = 1e-9;

// Throws Error(kNotFixedPoint) when the residual exceeds 1e-10.
StabilityReport ClassifyStability(const Operator& op, const SimplexPoint& x);

}  // namespace qso

#endif  // QSO_SPECTRAL_H_
