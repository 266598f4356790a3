#ifndef QSO_SIMPLEX_H_
#define QSO_SIMPLEX_H_

#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace qso {

// Construction tolerance: coordinates may dip to -kSimplexTolerance and the
// sum may miss 1 by kSimplexTolerance before a point is rejected.
inline constexpr double kSimplexTolerance = 1e-9;
// A coordinate at or below kZeroTolerance counts as zero.
inline constexpr double kZeroTolerance = 1e-12;

// A probability vector on {1..m}, m >= 2. Coordinates are stored 0-based;
// for m = 5 index 0..4 is Wood, Fire, Earth, Metal, Water.
class SimplexPoint {
 public:
  // Validates, clamps negative dust to zero and re-normalizes.
  // Throws Error(kReject) outside the tolerances above.
  static SimplexPoint Make(std::span<const double> coords);
  static SimplexPoint Make(std::initializer_list<double> coords);
  static SimplexPoint Make(const Eigen::VectorXd& coords);

  // Clamp and re-normalize without the acceptance test. Used on operator
  // output, which is stochastic up to round-off by construction.
  static SimplexPoint Normalize(Eigen::VectorXd coords);

  // Vertex e_{i+1} of S^{m-1} (i is 0-based).
  static SimplexPoint Vertex(int m, int i);
  static SimplexPoint Barycenter(int m);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  const Eigen::VectorXd& coords() const { return coords_; }
  std::vector<double> ToVector() const;

 private:
  explicit SimplexPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {}

  Eigen::VectorXd coords_;
};

// Set I of excluded (zero) coordinates, 0-based, |I| < m.
class FaceIndexSet {
 public:
  FaceIndexSet(int m, std::vector<int> excluded);

  int dim() const { return m_; }
  const std::vector<int>& excluded() const { return excluded_; }

 private:
  int m_;
  std::vector<int> excluded_;
};

// Result of dropping the zero coordinates of a boundary point.
struct ReducedPoint {
  SimplexPoint point;
  std::vector<int> indices;  // retained 0-based indices, ascending
};

// The barycenter (1/5, ..., 1/5) of S^4.
SimplexPoint FivePhaseBarycenter();

int ZeroCount(const SimplexPoint& x);
bool IsInterior(const SimplexPoint& x);
bool IsBoundary(const SimplexPoint& x);
bool OnFace(const SimplexPoint& x, const FaceIndexSet& face);

// Max-norm distance. All convergence thresholds in the library use it.
double Dist(const SimplexPoint& x, const SimplexPoint& y);
double Dist(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

ReducedPoint DropZeros(const SimplexPoint& x);

// Max-norm distance from x to the union of the d-dimensional faces of the
// simplex (d = 0: vertices, d = 1: edges, ..., d = m-1: x itself).
double DistanceToSkeleton(const Eigen::VectorXd& x, int d);

// Uniform sample from the interior of S^{m-1} (normalized exponentials).
SimplexPoint RandomSimplexPoint(int m, std::mt19937_64& rng);

}  // namespace qso

#endif  // QSO_SIMPLEX_H_
