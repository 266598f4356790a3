#include "qso/spectral.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "qso/error.h"
#include "qso/symmetric_map.h"

namespace qso {
namespace {

void RequireFive(Eigen::Index m) {
  if (m != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
}

void RequireQRange(double q) {
  if (!(std::abs(q) <= 0.2 + 1e-15)) {
    std::ostringstream msg;
    msg << "q = " << q << " outside [-0.2, 0.2]";
    throw Error(ErrorCode::kParamRange, msg.str());
  }
}

bool InsideSimplex(const Eigen::VectorXd& x) { return (x.array() >= 0.0).all(); }

// One projected-Newton run; returns the final point and its residual.
std::pair<Eigen::VectorXd, double> NewtonFrom(const Operator& op, Eigen::VectorXd x,
                                             const NewtonOptions& options) {
  const int m = op.dim();
  const int n = m - 1;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m, m);
  double residual = (op.ApplyRaw(x) - x).cwiseAbs().maxCoeff();
  for (int it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXd g = (op.ApplyRaw(x) - x).head(n);
    const Eigen::MatrixXd d = op.Jacobian(x) - identity;
    // Chain rule through x_m = 1 - sum(x_1..x_{m-1}).
    Eigen::MatrixXd reduced = d.topLeftCorner(n, n);
    reduced.colwise() -= d.col(n).head(n);
    const Eigen::VectorXd dy = reduced.fullPivLu().solve(-g);
    if (!dy.allFinite()) break;
    Eigen::VectorXd step(m);
    step.head(n) = dy;
    step[n] = -dy.sum();
    double scale = 1.0;
    Eigen::VectorXd next = x + step;
    while (!InsideSimplex(next) && scale > 1e-12) {
      scale *= 0.5;
      next = x + scale * step;
    }
    if (!InsideSimplex(next)) break;
    x = next;
    residual = (op.ApplyRaw(x) - x).cwiseAbs().maxCoeff();
    if ((scale * step).cwiseAbs().maxCoeff() < options.step_tolerance) break;
  }
  return {x, residual};
}

}  // namespace

double Psi(const Eigen::VectorXd& x, double p) {
  RequireFive(x.size());
  const std::array<double, 5> b = SymmetricBrackets<double>({x[0], x[1], x[2], x[3], x[4]}, p);
  return b[0] * b[1] * b[2] * b[3] * b[4];
}

double Psi(const SimplexPoint& x, double p) { return Psi(x.coords(), p); }

double Phi(const SimplexPoint& x) { return x.coords().prod(); }

double FixedPointResidual(const Operator& op, const SimplexPoint& x) {
  return (op.ApplyRaw(x.coords()) - x.coords()).cwiseAbs().maxCoeff();
}

SimplexPoint FindFixedPointSymmetric(const SymmetricParam& p) {
  const SimplexPoint center = FivePhaseBarycenter();
  const double residual = FixedPointResidual(Operator::SymmetricW(p), center);
  if (residual > 1e-14) {
    std::ostringstream msg;
    msg << "barycenter residual " << residual << " at p = " << p.p();
    throw Error(ErrorCode::kInvariantViolation, msg.str());
  }
  return center;
}

FixedPointSearch FindFixedPoints(const Operator& op, int seeds, std::uint64_t rng_seed,
                                 const NewtonOptions& options) {
  FixedPointSearch search;
  search.seeds = seeds;
  std::mt19937_64 rng(rng_seed);
  for (int s = 0; s < seeds; ++s) {
    const SimplexPoint start = RandomSimplexPoint(op.dim(), rng);
    auto [x, residual] = NewtonFrom(op, start.coords(), options);
    if (!(residual <= options.accept_residual)) {
      ++search.no_convergence;
      continue;
    }
    const SimplexPoint root = SimplexPoint::Normalize(x);
    const bool seen = std::any_of(search.roots.begin(), search.roots.end(), [&](const SimplexPoint& r) {
      return Dist(r, root) < options.dedup_distance;
    });
    if (!seen) {
      search.roots.push_back(root);
      search.residuals.push_back(FixedPointResidual(op, root));
    }
  }
  return search;
}

FixedPointSearch FindFixedPointsGeneral(const CfepParams& params, int seeds, std::uint64_t rng_seed) {
  return FindFixedPoints(Operator::CfepW(params), seeds, rng_seed);
}

QuarticCoeffs CharacteristicQuartic(double q) {
  RequireQRange(q);
  const double q2 = q * q;
  return {1.0, -5 * q + 1, 15 * q2 + 1, -15 * q2 * q - 5 * q2 - 5 * q + 1, 5 * q2 * q2 + 10 * q2 + 1};
}

double DiscriminantD(double q) {
  RequireQRange(q);
  const QuarticCoeffs c = CharacteristicQuartic(q);
  return c.c1 * c.c1 - 4 * c.c2 * c.c0;
}

std::pair<double, double> EigenModuli(double q) {
  RequireQRange(q);
  const double s5 = std::sqrt(5.0);
  return {(5 - 2 * s5) * q * q + 1, (5 + 2 * s5) * q * q + 1};
}

std::vector<std::complex<double>> PolynomialRoots(const std::vector<double>& coeffs) {
  if (coeffs.size() < 2 || coeffs.front() == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "polynomial needs a nonzero leading coefficient");
  }
  const int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) companion(0, j) = -coeffs[j + 1] / coeffs[0];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return std::vector<std::complex<double>>(ev.data(), ev.data() + ev.size());
}

std::vector<std::complex<double>> QuarticRoots(const QuarticCoeffs& c) {
  return PolynomialRoots({c.c4, c.c3, c.c2, c.c1, c.c0});
}

Eigen::MatrixXd TangentBasis(int m) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  return q.rightCols(m - 1);
}

Eigen::MatrixXd JacobianAt(const Operator& op, const SimplexPoint& x) { return op.Jacobian(x.coords()); }

Eigen::MatrixXd TangentRestrictedJacobian(const Operator& op, const SimplexPoint& x) {
  const Eigen::MatrixXd b = TangentBasis(op.dim());
  return b.transpose() * JacobianAt(op, x) * b;
}

std::vector<std::complex<double>> TangentSpectrum(const Operator& op, const SimplexPoint& x) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(TangentRestrictedJacobian(op, x), false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return std::vector<std::complex<double>>(ev.data(), ev.data() + ev.size());
}

std::string_view StabilityName(Stability s) {
  switch (s) {
    case Stability::kRepeller: return "repeller";
    case Stability::kSaddle: return "saddle";
    case Stability::kAttractor: return "attractor";
    case Stability::kNonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

StabilityReport ClassifyStability(const Operator& op, const SimplexPoint& x) {
  const double residual = FixedPointResidual(op, x);
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "residual " << residual << " exceeds 1e-10";
    throw Error(ErrorCode::kNotFixedPoint, msg.str());
  }
  StabilityReport report{x, TangentSpectrum(op, x), {}, Stability::kNonhyperbolic};
  int above = 0, below = 0;
  for (const auto& l : report.eigenvalues) {
    const double r = std::abs(l);
    report.moduli.push_back(r);
    if (r > 1 + kHyperbolicityMargin) ++above;
    if (r < 1 - kHyperbolicityMargin) ++below;
  }
  const int n = static_cast<int>(report.moduli.size());
  if (above + below < n) {
    report.classification = Stability::kNonhyperbolic;
  } else if (above == n) {
    report.classification = Stability::kRepeller;
  } else if (below == n) {
    report.classification = Stability::kAttractor;
  } else {
    report.classification = Stability::kSaddle;
  }
  return report;
}

}  // namespace qso
