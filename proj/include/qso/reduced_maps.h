#ifndef QSO_REDUCED_MAPS_H_
#define QSO_REDUCED_MAPS_H_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qso/operators.h"
#include "qso/simplex.h"

namespace qso {

// Unit-interval maps governing the five-step return on an edge of S^4.
//   f(x) = x(1 + p(1 - x)),  g(x) = (1 - x)(1 - p x),  h(x) = (1 - x)(1 + p x),
//   alpha(x) = x(1 - p(1 - x)).
// F = h.g.f.f.f is the return map on the edge {e1, e2}; G = g.f.h.alpha.alpha
// the return map on the edge {e1, e3}. Both fix 0 and 1.
// Templated on the number type so that shape properties can be checked in
// exact arithmetic: at |p| = 1 the maps are 1 - (1 - x)^32 and x^32 up to
// orientation, flatter than any floating-point grid can resolve.
template <typename Real>
class BasicEdgeMaps {
 public:
  explicit BasicEdgeMaps(Real p) : p_(std::move(p)) {}
  const Real& p() const { return p_; }
  Real f(const Real& x) const { return x * (1 + p_ * (1 - x)); }
  Real g(const Real& x) const { return (1 - x) * (1 - p_ * x); }
  Real h(const Real& x) const { return (1 - x) * (1 + p_ * x); }
  Real alpha(const Real& x) const { return x * (1 - p_ * (1 - x)); }
  Real F(const Real& x) const { return h(g(f(f(f(x))))); }
  Real G(const Real& x) const { return g(f(h(alpha(alpha(x))))); }

 private:
  Real p_;
};

class EdgeMaps : public BasicEdgeMaps<double> {
 public:
  explicit EdgeMaps(const SymmetricParam& p) : BasicEdgeMaps<double>(p.p()) {}
};

// Throw Error(kInvalidArgument) unless x is in [0, 1].
double EdgeF(const SymmetricParam& p, double x);
double EdgeG(const SymmetricParam& p, double x);

struct EdgeDerivatives {
  double F0, F1, G0, G1;  // F'(0) = (1+p)^5, F'(1) = (1-p)^5, G'(0) = (1-p)^5, G'(1) = (1+p)^5
};
EdgeDerivatives EdgeDerivativesAt(const SymmetricParam& p);

enum class EdgeReturnMap { kF, kG };

struct EdgeLimitResult {
  int limit = 0;  // 0 or 1
  double value = 0;
  std::int64_t steps = 0;
};

inline constexpr std::int64_t kEdgeMaxSteps = 1'000'000;
inline constexpr std::int64_t kFaceMaxSteps = 10'000'000;

// Iterates the return map until |x_{n+1} - x_n| < 1e-13 while moving toward
// the nearer endpoint. Throws Error(kPZero) for p = 0, Error(kInvalidArgument)
// unless 0 < x0 < 1 and Error(kNoConvergence) past kEdgeMaxSteps.
EdgeLimitResult EdgeLimit(const SymmetricParam& p, double x0, EdgeReturnMap which);

// Restrictions of the Volterra factor to faces of S^4, and the relabelling tau.
//   kA:      (x, y, z) -> (x[1+p(y-z)], y[1+p(z-x)], z[1+p(x-y)])
//   kB:      T_tau o A, i.e. (A_z, A_x, A_y)
//   kHatV:   (x[1+p(y+z)], y[1-p(x+z)], z[1-p(x-y)])
//   kTildeV: (x[1+p(y-z+t)], y[1-p(x-z+t)], z[1+p(x-y+t)], t[1-p(x-y+z)])
//   kTau:    (x, y, z) -> (z, x, y)
enum class FaceKind { kA, kB, kHatV, kTildeV, kTau };
std::string_view FaceKindName(FaceKind kind);

class FaceOperator {
 public:
  FaceOperator(FaceKind kind, const SymmetricParam& p) : kind_(kind), p_(p.p()) {}

  FaceKind kind() const { return kind_; }
  double p() const { return p_; }
  int dim() const { return kind_ == FaceKind::kTildeV ? 4 : 3; }

  Eigen::VectorXd ApplyRaw(const Eigen::VectorXd& x) const;
  // Throws Error(kDimMismatch).
  SimplexPoint Apply(const SimplexPoint& x) const;

 private:
  FaceKind kind_;
  double p_;
};

struct FaceCase1Result {
  // xhat0, A xhat0, A^2 xhat0, B A^2 xhat0, B^2 A^2 xhat0, B^3 A^2 xhat0.
  std::vector<SimplexPoint> route;
  SimplexPoint a_power;  // A^5 xhat0
};

// Five-step return on the face {x4 = x5 = 0}. Throws Error(kInvariantViolation)
// if the two routes differ by more than 1e-12.
FaceCase1Result FaceCase1Reduction(const SymmetricParam& p, const SimplexPoint& xhat0);

struct HatVLimitResult {
  int vertex = 0;  // 0-based index of the limit vertex of S^2
  std::int64_t steps = 0;
  // Steps at which the leading coordinate (x for p > 0, y for p < 0) decreased.
  std::int64_t monotonicity_violations = 0;
};

// Iterates V-hat until within 1e-10 of a vertex. Throws Error(kPZero),
// Error(kInvalidArgument) for a start off the open triangle, and
// Error(kNoConvergence) past kFaceMaxSteps.
HatVLimitResult HatVLimit(const SymmetricParam& p, const SimplexPoint& xhat0);

// Points (u, 1/3, 1/3, 1/3 - u), u in [0, 1/3]; u = 1/3 is M and u = 0 is N.
SimplexPoint SegmentPoint(double u);
SimplexPoint SegmentM();
SimplexPoint SegmentN();
// The alternative form ((1 - s)/3, 1/3, 1/3, s/3), s in [0, 1], has u = (1 - s)/3.
double SegmentUFromS(double s);
double SegmentSFromU(double u);

// Restriction of tilde-V to the segment: u -> u(1 + p(1/3 - u)).
double SegmentPsi(double p, double u);
double SegmentPsiDerivative(double p, double u);

struct SegmentLimitResult {
  char endpoint = 'M';
  SimplexPoint point;
  std::int64_t steps = 0;
};

// Iterates tilde-V from SegmentPoint(u0) until within 1e-10 of M or N.
SegmentLimitResult SegmentLimit(const SymmetricParam& p, double u0);

// Max deviation of the middle coordinates of tilde-V(SegmentPoint(u)) from 1/3.
double SegmentInvarianceResidual(const SymmetricParam& p, double u);

}  // namespace qso

#endif  // QSO_REDUCED_MAPS_H_
