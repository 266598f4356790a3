#ifndef QSO_ENGINES_H_
#define QSO_ENGINES_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>

#include "qso/simplex.h"

namespace qso {

// Long-run iteration of the one-parameter operator W. Each engine tracks
// the coordinate product phi along every step it takes.
struct OrbitStats {
  std::int64_t steps = 0;
  double min_log_phi = 0;  // -inf on the boundary
  // Steps with phi(x') > phi(x) beyond a relative slack of 1e-12.
  std::int64_t phi_increase_violations = 0;
};

inline constexpr double kPhiSlack = 1e-12;

class OrbitEngine {
 public:
  virtual ~OrbitEngine() = default;

  virtual void Advance(std::int64_t n) = 0;
  virtual std::array<double, 5> Coords() const = 0;
  virtual const OrbitStats& stats() const = 0;
  virtual std::string_view name() const = 0;
};

// Plain double iteration with re-normalization after every step.
std::unique_ptr<OrbitEngine> MakeDoubleEngine(double p, const SimplexPoint& x0);

// Iterates log-coordinates. Coordinates far below the double range keep
// their exponent instead of flushing to zero, so trajectories that shadow
// the boundary for long stretches are not captured by the vertex cycle.
std::unique_ptr<OrbitEngine> MakeLogEngine(double p, const SimplexPoint& x0);

// A start given exactly, so that 1/3 and 1/5 are not rounded to doubles.
struct ExactStart {
  enum class Kind { kBarycenter, kVertex, kOneThird, kSegment };
  Kind kind = Kind::kBarycenter;
  int rotation = 0;  // applied as T^rotation
  double u = 0;      // kSegment: (u, 1/3, 1/3, 1/3 - u, 0) before rotation
};

// Working precision 96 + ceil(0.25 |p| steps) bits keeps the round-off below
// the largest transverse expansion rate of the invariant segment over `steps`.
unsigned MultiprecisionBits(double p, std::int64_t steps);

// MPFR iteration at `bits` of precision. MPFR's default precision is process
// global, so these engines are serialized: construction blocks while another
// one is alive.
std::unique_ptr<OrbitEngine> MakeMultiprecisionEngine(double p, const ExactStart& start, unsigned bits);

}  // namespace qso

#endif  // QSO_ENGINES_H_
