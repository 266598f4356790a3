#ifndef QSO_CLASSIFIER_H_
#define QSO_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qso/engines.h"
#include "qso/simplex.h"

namespace qso {

enum class Stratum {
  kFixedPoint,        // the barycenter
  kVertexCycle,       // e_1 -> ... -> e_5
  kOneThirdCycle,     // orbit of (1/3, 1/3, 1/3, 0, 0)
  kInfiniteLimitSet,  // no limit; accumulates on a boundary stratum
};
std::string_view StratumName(Stratum s);

struct EmpiricalDiagnosis {
  std::string engine;
  std::int64_t burn_steps = 0;
  std::int64_t window_stride = 0;
  int window_samples = 0;

  // Every window sample of the 5-step subsequence lies within delta_cycle of
  // one point of a known cycle.
  bool converged_to_cycle = false;
  std::optional<Stratum> cycle_kind;
  int cycle_phase = -1;
  double cycle_error = 0;  // largest sample distance to the nearest cycle point

  double late_window_diameter = 0;
  double min_phi = 0;
  double min_log_phi = 0;
  std::int64_t phi_increase_violations = 0;
  // Largest window distance to the d-skeleton, d = 0..3.
  std::array<double, 4> dist_to_skeleton{};
  // Smallest d whose skeleton distance stays below the threshold (4 if none).
  int observed_dim = 4;
};

struct OmegaClassification {
  Stratum stratum = Stratum::kFixedPoint;
  // Index of the cycle point approached by x^(5k): e_{phase+1} for the vertex
  // cycle, T^phase (1/3, 1/3, 1/3, 0, 0) for the one-third cycle.
  int phase = -1;
  // Dimension of the boundary skeleton carrying an infinite limit set.
  int stratum_dim = 0;
  std::string rule;
  // Start within 1e-3 of a repelling set (the barycenter, a face center or the
  // invariant segment), where escape is slow.
  bool near_repeller = false;
  std::optional<EmpiricalDiagnosis> empirical;
};

inline constexpr double kStructureTolerance = 1e-10;
inline constexpr double kNearRepellerDistance = 1e-3;

// Throws Error(kPZero) for p = 0, where every point is 5-periodic.
OmegaClassification Predict(double p, const SimplexPoint& x0);

struct SegmentMembership {
  int rotation = 0;  // x0 = T^rotation (u, 1/3, 1/3, 1/3 - u, 0)
  double u = 0;
};
// Some rotation of x0 matches (u, 1/3, 1/3, 1/3 - u, 0), u in [0, 1/3],
// within kStructureTolerance.
std::optional<SegmentMembership> MembershipMNpi(const SimplexPoint& x0);
// Max-norm distance of the nearest rotation of x0 to that segment.
double DistanceToSegmentOrbit(const SimplexPoint& x0);

struct DiagnoseOptions {
  std::int64_t n_burn = 100'000;
  int n_window = 1000;
  // The window spans window_span_factor * n_burn steps (at least 5 * n_window).
  double window_span_factor = 4.0;
  // Burn-in for starts on the one-third stratum, iterated in multiprecision.
  std::int64_t n_burn_exact = 5000;
  double delta_cycle = 1e-6;
  double delta_noconv = 1e-2;
  double skeleton_threshold = 1e-3;
  double min_phi_threshold = 1e-6;
};

// Iterates W from x0 and summarizes the late orbit. Starts that sit exactly
// on a periodic stratum are iterated from their exact values.
EmpiricalDiagnosis Diagnose(double p, const SimplexPoint& x0, const DiagnoseOptions& options = {});

// Whether the empirical summary confirms the prediction.
bool Agrees(const OmegaClassification& predicted, const EmpiricalDiagnosis& empirical,
            const DiagnoseOptions& options = {});

struct BasinEntry {
  std::array<int, 5> lattice;  // numerators over the resolution
  SimplexPoint point;
  OmegaClassification classification;
};

struct BasinScanResult {
  double p = 0;
  int resolution = 0;
  std::vector<BasinEntry> entries;  // lexicographic order of `lattice`
};

struct BasinOptions {
  int verify_samples = 0;  // entries diagnosed empirically, chosen by `seed`
  std::uint64_t seed = 0;
  int threads = 0;  // 0: QSO_THREADS or hardware concurrency
  DiagnoseOptions diagnose;
};

inline constexpr int kMaxBasinResolution = 60;

// Throws Error(kResolutionTooHigh) above kMaxBasinResolution.
BasinScanResult BasinScan(double p, int resolution, const BasinOptions& options = {});

int WorkerCount(int requested);

}  // namespace qso

#endif  // QSO_CLASSIFIER_H_
