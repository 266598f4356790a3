#include "qso/simplex.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qso/error.h"

namespace qso {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kReject: return "REJECT";
    case ErrorCode::kDimMismatch: return "DIM_MISMATCH";
    case ErrorCode::kNotSkew: return "NOT_SKEW";
    case ErrorCode::kParamRange: return "PARAM_RANGE";
    case ErrorCode::kNoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::kNotFixedPoint: return "NOT_FIXED_POINT";
    case ErrorCode::kNotPe2Solution: return "NOT_PE2_SOLUTION";
    case ErrorCode::kPZero: return "P_ZERO";
    case ErrorCode::kResolutionTooHigh: return "RESOLUTION_TOO_HIGH";
    case ErrorCode::kInvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorCode::kIo: return "IO";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

SimplexPoint SimplexPoint::Make(std::span<const double> coords) {
  return Make(Eigen::Map<const Eigen::VectorXd>(coords.data(),
                                                static_cast<Eigen::Index>(coords.size())));
}

SimplexPoint SimplexPoint::Make(std::initializer_list<double> coords) {
  return Make(std::span<const double>(coords.begin(), coords.size()));
}

SimplexPoint SimplexPoint::Make(const Eigen::VectorXd& coords) {
  if (coords.size() < 2) {
    throw Error(ErrorCode::kReject, "simplex dimension must be at least 2");
  }
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i]) || coords[i] < -kSimplexTolerance) {
      std::ostringstream msg;
      msg << "coordinate " << i + 1 << " = " << coords[i] << " is negative";
      throw Error(ErrorCode::kReject, msg.str());
    }
  }
  const double sum = coords.sum();
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream msg;
    msg << "coordinates sum to " << sum;
    throw Error(ErrorCode::kReject, msg.str());
  }
  return Normalize(coords);
}

SimplexPoint SimplexPoint::Normalize(Eigen::VectorXd coords) {
  coords = coords.cwiseMax(0.0);
  const double sum = coords.sum();
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw Error(ErrorCode::kReject, "cannot normalize a zero or non-finite vector");
  }
  // A sum already within summation round-off of 1 is left alone, which makes
  // normalization exactly idempotent and still caps drift at m ulps.
  if (std::abs(sum - 1.0) > coords.size() * std::numeric_limits<double>::epsilon()) coords /= sum;
  return SimplexPoint(std::move(coords));
}

SimplexPoint SimplexPoint::Vertex(int m, int i) {
  if (m < 2 || i < 0 || i >= m) {
    throw Error(ErrorCode::kInvalidArgument, "vertex index out of range");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  v[i] = 1.0;
  return SimplexPoint(std::move(v));
}

SimplexPoint SimplexPoint::Barycenter(int m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "dimension must be at least 2");
  return SimplexPoint(Eigen::VectorXd::Constant(m, 1.0 / m));
}

std::vector<double> SimplexPoint::ToVector() const {
  return std::vector<double>(coords_.data(), coords_.data() + coords_.size());
}

FaceIndexSet::FaceIndexSet(int m, std::vector<int> excluded)
    : m_(m), excluded_(std::move(excluded)) {
  std::sort(excluded_.begin(), excluded_.end());
  excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
  if (static_cast<int>(excluded_.size()) >= m) {
    throw Error(ErrorCode::kInvalidArgument, "face must keep at least one coordinate");
  }
  for (int i : excluded_) {
    if (i < 0 || i >= m) throw Error(ErrorCode::kInvalidArgument, "face index out of range");
  }
}

SimplexPoint FivePhaseBarycenter() { return SimplexPoint::Barycenter(5); }

int ZeroCount(const SimplexPoint& x) {
  return static_cast<int>((x.coords().array() <= kZeroTolerance).count());
}

bool IsInterior(const SimplexPoint& x) { return ZeroCount(x) == 0; }

bool IsBoundary(const SimplexPoint& x) { return !IsInterior(x); }

bool OnFace(const SimplexPoint& x, const FaceIndexSet& face) {
  if (face.dim() != x.dim()) throw Error(ErrorCode::kDimMismatch, "face and point dimensions differ");
  return std::all_of(face.excluded().begin(), face.excluded().end(),
                     [&](int i) { return x[i] <= kZeroTolerance; });
}

double Dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimMismatch, "distance between different dimensions");
  return (x - y).cwiseAbs().maxCoeff();
}

double Dist(const SimplexPoint& x, const SimplexPoint& y) { return Dist(x.coords(), y.coords()); }

ReducedPoint DropZeros(const SimplexPoint& x) {
  std::vector<int> indices;
  std::vector<double> kept;
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i] > kZeroTolerance) {
      indices.push_back(i);
      kept.push_back(x[i]);
    }
  }
  // A vertex reduces to the one-point simplex S^0.
  return {SimplexPoint::Normalize(Eigen::Map<Eigen::VectorXd>(kept.data(),
                                                             static_cast<Eigen::Index>(kept.size()))),
          std::move(indices)};
}

double DistanceToSkeleton(const Eigen::VectorXd& x, int d) {
  const int m = static_cast<int>(x.size());
  if (d < 0) throw Error(ErrorCode::kInvalidArgument, "skeleton dimension must be non-negative");
  if (d >= m - 1) return 0.0;
  std::vector<double> sorted(x.data(), x.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Keep the d+1 largest coordinates; the optimal face point spreads the
  // dropped mass evenly over them.
  double dropped = 0.0;
  for (int i = d + 1; i < m; ++i) dropped += sorted[i];
  return std::max(sorted[d + 1], dropped / (d + 1));
}

SimplexPoint RandomSimplexPoint(int m, std::mt19937_64& rng) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "dimension must be at least 2");
  std::exponential_distribution<double> exp1(1.0);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    do {
      v[i] = exp1(rng);
    } while (!(v[i] > 0.0));
  }
  return SimplexPoint::Normalize(std::move(v));
}

}  // namespace qso
