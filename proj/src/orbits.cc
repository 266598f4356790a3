#include "qso/orbits.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <boost/rational.hpp>

#include "qso/error.h"

namespace qso {
namespace {

using Rational = boost::rational<long long>;
// Mixed rational/int comparisons recurse forever under C++20 in Boost 1.74.
const Rational kZero(0);

// Linear factor of each equation and the coordinate multiplying it.
constexpr int kPe2Forms[5][5] = {
    {1, -1, 1, -1, 0},
    {0, 1, -1, 1, -1},
    {1, 0, -1, 1, -1},
    {1, -1, 0, 1, -1},
    {1, -1, 1, 0, -1},
};
constexpr int kPe2Multiplier[5] = {4, 0, 1, 2, 3};

// Solves rows * v = rhs exactly. Returns nullopt when inconsistent; throws
// when the solution is not unique.
std::optional<std::vector<Rational>> SolveExact(std::vector<std::vector<Rational>> rows) {
  const int n_rows = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.front().size()) - 1;
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < n && rank < n_rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < n_rows; ++r) {
      if (rows[r][col] != kZero) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(1) / rows[rank][col];
    for (auto& v : rows[rank]) v *= inv;
    for (int r = 0; r < n_rows; ++r) {
      if (r == rank || rows[r][col] == kZero) continue;
      const Rational factor = rows[r][col];
      for (int c = 0; c <= n; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < n_rows; ++r) {
    if (rows[r][n] != kZero) return std::nullopt;
  }
  if (rank < n) {
    throw Error(ErrorCode::kInvariantViolation, "periodic-point system has a continuum of solutions");
  }
  std::vector<Rational> solution(n);
  for (int r = 0; r < rank; ++r) solution[pivot_col[r]] = rows[r][n];
  return solution;
}

bool SameUpTo(const SimplexPoint& a, const SimplexPoint& b, double tol) { return Dist(a, b) <= tol; }

}  // namespace

std::string_view OrbitKindName(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::kFixedPoint: return "fixed_point";
    case OrbitKind::kVertexCycle: return "vertex_cycle";
    case OrbitKind::kOneThirdCycle: return "one_third_cycle";
    case OrbitKind::kOther: return "other";
  }
  return "unknown";
}

Eigen::VectorXd ResidualPe2(const SimplexPoint& x) {
  if (x.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  Eigen::VectorXd r(5);
  for (int e = 0; e < 5; ++e) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += kPe2Forms[e][i] * x[i];
    r[e] = x[kPe2Multiplier[e]] * s;
  }
  return r;
}

std::vector<SimplexPoint> SolvePe2() {
  std::vector<SimplexPoint> solutions;
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<int> support;
    for (int i = 0; i < 5; ++i)
      if (mask & (1 << i)) support.push_back(i);
    const int n = static_cast<int>(support.size());
    // A positive coordinate forces its equation's linear factor to vanish.
    std::vector<std::vector<Rational>> rows;
    for (int e = 0; e < 5; ++e) {
      if (!(mask & (1 << kPe2Multiplier[e]))) continue;
      std::vector<Rational> row(n + 1, Rational(0));
      for (int c = 0; c < n; ++c) row[c] = kPe2Forms[e][support[c]];
      rows.push_back(std::move(row));
    }
    std::vector<Rational> sum_row(n + 1, Rational(1));
    rows.push_back(std::move(sum_row));
    const auto solution = SolveExact(std::move(rows));
    if (!solution) continue;
    if (std::any_of(solution->begin(), solution->end(), [](const Rational& v) { return v <= kZero; })) continue;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
    for (int c = 0; c < n; ++c) x[support[c]] = boost::rational_cast<double>((*solution)[c]);
    solutions.push_back(SimplexPoint::Make(x));
  }
  std::sort(solutions.begin(), solutions.end(), [](const SimplexPoint& a, const SimplexPoint& b) {
    const std::vector<double> va = a.ToVector(), vb = b.ToVector();
    return std::lexicographical_compare(vb.begin(), vb.end(), va.begin(), va.end());
  });
  return solutions;
}

PeriodicOrbit TpiClosure(const SimplexPoint& x, double check_p) {
  const double residual = ResidualPe2(x).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "residual " << residual << " exceeds 1e-10";
    throw Error(ErrorCode::kNotPe2Solution, msg.str());
  }
  const Operator w = Operator::SymmetricW(SymmetricParam(check_p));
  SimplexPoint wx = x;
  for (int i = 1; i <= 5; ++i) {
    wx = w.Apply(wx);
    const double err = Dist(wx, ApplyTpiPower(x, i));
    if (err > i * kOrbitStepTolerance) {
      std::ostringstream msg;
      msg << "W^" << i << "(x) differs from T^" << i << "(x) by " << err;
      throw Error(ErrorCode::kInvariantViolation, msg.str());
    }
  }
  PeriodicOrbit orbit;
  orbit.points.push_back(x);
  for (int i = 1; i < 5; ++i) {
    const SimplexPoint next = ApplyTpiPower(x, i);
    if (SameUpTo(next, x, kOrbitStepTolerance)) break;
    orbit.points.push_back(next);
  }
  orbit.period = static_cast<int>(orbit.points.size());
  const int zeros = ZeroCount(x);
  if (orbit.period == 1) {
    orbit.kind = OrbitKind::kFixedPoint;
  } else if (zeros == 4) {
    orbit.kind = OrbitKind::kVertexCycle;
  } else if (zeros == 2 && std::any_of(orbit.points.begin(), orbit.points.end(), [](const SimplexPoint& y) {
               return SameUpTo(y, OneThirdPoint(0), 1e-10);
             })) {
    orbit.kind = OrbitKind::kOneThirdCycle;
  } else {
    orbit.kind = OrbitKind::kOther;
  }
  return orbit;
}

bool VerifyOrbit(const Operator& op, const PeriodicOrbit& orbit, double tol) {
  if (orbit.points.empty() || orbit.period != static_cast<int>(orbit.points.size())) return false;
  for (int i = 0; i < orbit.period; ++i) {
    const SimplexPoint next = op.Apply(orbit.points[i]);
    if (Dist(next, orbit.points[(i + 1) % orbit.period]) > tol) return false;
  }
  return Dist(Power(op, orbit.points[0], orbit.period), orbit.points[0]) <= orbit.period * tol;
}

SimplexPoint OneThirdPoint(int k) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  x.head(3).setConstant(1.0 / 3.0);
  return ApplyTpiPower(SimplexPoint::Normalize(x), ((k % 5) + 5) % 5);
}

}  // namespace qso
