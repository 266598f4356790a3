#ifndef QSO_ORBITS_H_
#define QSO_ORBITS_H_

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qso/operators.h"
#include "qso/simplex.h"

namespace qso {

enum class OrbitKind { kFixedPoint, kVertexCycle, kOneThirdCycle, kOther };
std::string_view OrbitKindName(OrbitKind kind);

struct PeriodicOrbit {
  std::vector<SimplexPoint> points;
  int period = 0;
  OrbitKind kind = OrbitKind::kOther;
};

inline constexpr double kOrbitStepTolerance = 1e-12;

// Left-hand sides of the system characterizing W(x) = T(x) for p != 0:
//   x5(x1-x2+x3-x4), x1(x2-x3+x4-x5), x2(x1-x3+x4-x5),
//   x3(x1-x2+x4-x5), x4(x1-x2+x3-x5).
Eigen::VectorXd ResidualPe2(const SimplexPoint& x);

// All solutions on S^4, by enumerating the 31 support patterns and solving
// each linear system exactly over the rationals. Sorted lexicographically
// by descending coordinates.
std::vector<SimplexPoint> SolvePe2();

// (x, T x, ..., T^4 x) collapsed to its true period, after checking that
// W^i(x) = T^i(x) for i = 1..5 under the symmetric operator with parameter
// `check_p`. Throws Error(kNotPe2Solution) if the residual exceeds 1e-10 and
// Error(kInvariantViolation) if the W/T check fails.
PeriodicOrbit TpiClosure(const SimplexPoint& x, double check_p = 1.0);

// Each step op(points[i]) = points[i+1 mod period] within `tol`, and
// op^period(points[0]) returns to points[0] within period * tol.
bool VerifyOrbit(const Operator& op, const PeriodicOrbit& orbit, double tol = kOrbitStepTolerance);

// (1/3, 1/3, 1/3, 0, 0) shifted by T^k.
SimplexPoint OneThirdPoint(int k);

}  // namespace qso

#endif  // QSO_ORBITS_H_
