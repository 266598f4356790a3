#include "qso/reduced_maps.h"

#include <cmath>
#include <sstream>

#include "qso/error.h"

namespace qso {
namespace {

void RequireUnit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [0, 1]";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

void RequireNonzero(const SymmetricParam& p) {
  if (p.p() == 0.0) throw Error(ErrorCode::kPZero, "limit undefined for p = 0");
}

void RequireSegment(double u) {
  if (!(u >= 0.0 && u <= 1.0 / 3.0)) {
    std::ostringstream msg;
    msg << "u = " << u << " outside [0, 1/3]";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

}  // namespace

double EdgeF(const SymmetricParam& p, double x) {
  RequireUnit(x);
  return EdgeMaps(p).F(x);
}

double EdgeG(const SymmetricParam& p, double x) {
  RequireUnit(x);
  return EdgeMaps(p).G(x);
}

EdgeDerivatives EdgeDerivativesAt(const SymmetricParam& p) {
  const double up = std::pow(1 + p.p(), 5);
  const double down = std::pow(1 - p.p(), 5);
  return {up, down, down, up};
}

EdgeLimitResult EdgeLimit(const SymmetricParam& p, double x0, EdgeReturnMap which) {
  RequireNonzero(p);
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge start must lie strictly inside (0, 1)");
  }
  const EdgeMaps maps(p);
  double x = x0;
  for (std::int64_t step = 1; step <= kEdgeMaxSteps; ++step) {
    const double next = which == EdgeReturnMap::kF ? maps.F(x) : maps.G(x);
    // A tiny step away from an endpoint is a slow escape, not convergence.
    const bool approaching = std::min(next, 1 - next) <= std::min(x, 1 - x);
    const double move = std::abs(next - x);
    x = next;
    if (move < 1e-13 && approaching) return {next > 0.5 ? 1 : 0, next, step};
  }
  std::ostringstream msg;
  msg << "edge map did not settle within " << kEdgeMaxSteps << " steps from x0 = " << x0;
  throw Error(ErrorCode::kNoConvergence, msg.str());
}

std::string_view FaceKindName(FaceKind kind) {
  switch (kind) {
    case FaceKind::kA: return "A";
    case FaceKind::kB: return "B";
    case FaceKind::kHatV: return "hatV";
    case FaceKind::kTildeV: return "tildeV";
    case FaceKind::kTau: return "tau";
  }
  return "unknown";
}

Eigen::VectorXd FaceOperator::ApplyRaw(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) {
    std::ostringstream msg;
    msg << FaceKindName(kind_) << " acts on dimension " << dim() << ", got " << v.size();
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
  const double p = p_;
  Eigen::VectorXd out(dim());
  switch (kind_) {
    case FaceKind::kA:
    case FaceKind::kB: {
      const double x = v[0], y = v[1], z = v[2];
      const double ax = x * (1 + p * (y - z));
      const double ay = y * (1 + p * (z - x));
      const double az = z * (1 + p * (x - y));
      if (kind_ == FaceKind::kA) {
        out << ax, ay, az;
      } else {
        out << az, ax, ay;
      }
      break;
    }
    case FaceKind::kHatV: {
      const double x = v[0], y = v[1], z = v[2];
      out << x * (1 + p * (y + z)), y * (1 - p * (x + z)), z * (1 - p * (x - y));
      break;
    }
    case FaceKind::kTildeV: {
      const double x = v[0], y = v[1], z = v[2], t = v[3];
      out << x * (1 + p * (y - z + t)), y * (1 - p * (x - z + t)), z * (1 + p * (x - y + t)),
          t * (1 - p * (x - y + z));
      break;
    }
    case FaceKind::kTau:
      out << v[2], v[0], v[1];
      break;
  }
  return out;
}

SimplexPoint FaceOperator::Apply(const SimplexPoint& x) const {
  return SimplexPoint::Normalize(ApplyRaw(x.coords()));
}

FaceCase1Result FaceCase1Reduction(const SymmetricParam& p, const SimplexPoint& xhat0) {
  const FaceOperator a(FaceKind::kA, p);
  const FaceOperator b(FaceKind::kB, p);
  FaceCase1Result result{{xhat0}, xhat0};
  for (int i = 0; i < 5; ++i) {
    const FaceOperator& op = i < 2 ? a : b;
    result.route.push_back(op.Apply(result.route.back()));
    result.a_power = a.Apply(result.a_power);
  }
  const double gap = Dist(result.route.back(), result.a_power);
  if (gap > 1e-12) {
    std::ostringstream msg;
    msg << "B^3 A^2 and A^5 differ by " << gap;
    throw Error(ErrorCode::kInvariantViolation, msg.str());
  }
  return result;
}

HatVLimitResult HatVLimit(const SymmetricParam& p, const SimplexPoint& xhat0) {
  RequireNonzero(p);
  if (xhat0.dim() != 3) throw Error(ErrorCode::kDimMismatch, "expected a point of S^2");
  if (ZeroCount(xhat0) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "start must have three positive coordinates");
  }
  const FaceOperator hat_v(FaceKind::kHatV, p);
  const int lead = p.p() > 0 ? 0 : 1;
  HatVLimitResult result;
  SimplexPoint x = xhat0;
  for (std::int64_t step = 1; step <= kFaceMaxSteps; ++step) {
    const SimplexPoint next = hat_v.Apply(x);
    if (next[lead] < x[lead]) ++result.monotonicity_violations;
    x = next;
    for (int v = 0; v < 3; ++v) {
      if (Dist(x, SimplexPoint::Vertex(3, v)) <= 1e-10) {
        result.vertex = v;
        result.steps = step;
        return result;
      }
    }
  }
  throw Error(ErrorCode::kNoConvergence, "V-hat iterates did not reach a vertex");
}

SimplexPoint SegmentPoint(double u) {
  RequireSegment(u);
  Eigen::VectorXd x(4);
  x << u, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0 - u;
  return SimplexPoint::Normalize(x);
}

SimplexPoint SegmentM() { return SegmentPoint(1.0 / 3.0); }

SimplexPoint SegmentN() { return SegmentPoint(0.0); }

double SegmentUFromS(double s) { return (1 - s) / 3; }

double SegmentSFromU(double u) { return 1 - 3 * u; }

double SegmentPsi(double p, double u) { return u * (1 + p * (1.0 / 3.0 - u)); }

double SegmentPsiDerivative(double p, double u) { return 1 + p / 3 - 2 * p * u; }

SegmentLimitResult SegmentLimit(const SymmetricParam& p, double u0) {
  RequireNonzero(p);
  const FaceOperator tilde_v(FaceKind::kTildeV, p);
  const SimplexPoint m = SegmentM(), n = SegmentN();
  SimplexPoint x = SegmentPoint(u0);
  for (std::int64_t step = 0; step <= kFaceMaxSteps; ++step) {
    if (Dist(x, m) <= 1e-10) return {'M', m, step};
    if (Dist(x, n) <= 1e-10) return {'N', n, step};
    x = tilde_v.Apply(x);
  }
  throw Error(ErrorCode::kNoConvergence, "tilde-V iterates did not reach M or N");
}

double SegmentInvarianceResidual(const SymmetricParam& p, double u) {
  const Eigen::VectorXd y = FaceOperator(FaceKind::kTildeV, p).ApplyRaw(SegmentPoint(u).coords());
  return std::max(std::abs(y[1] - 1.0 / 3.0), std::abs(y[2] - 1.0 / 3.0));
}

}  // namespace qso
