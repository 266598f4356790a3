#include "qso/classifier.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "qso/error.h"
#include "qso/operators.h"
#include "qso/orbits.h"

namespace qso {
namespace {

constexpr double kThird = 1.0 / 3.0;

int Mod5(int k) { return ((k % 5) + 5) % 5; }

// y_i = x_{(i + a) mod 5}, i.e. x = T^a y.
std::array<double, 5> Unrotate(const SimplexPoint& x, int a) {
  std::array<double, 5> y;
  for (int i = 0; i < 5; ++i) y[i] = x[Mod5(i + a)];
  return y;
}

// Distance from the first four coordinates of y (y[4] = 0) to the segment
// (u, 1/3, 1/3, 1/3 - u), with the minimizing u.
std::pair<double, double> SegmentDistance(const std::array<double, 5>& y) {
  const double u = std::clamp(0.5 * (y[0] + kThird - y[3]), 0.0, kThird);
  const double d = std::max({std::abs(y[0] - u), std::abs(y[1] - kThird), std::abs(y[2] - kThird),
                             std::abs(y[3] - (kThird - u)), std::abs(y[4])});
  return {d, u};
}

std::vector<int> Support(const SimplexPoint& x) {
  std::vector<int> s;
  for (int i = 0; i < 5; ++i)
    if (x[i] > kZeroTolerance) s.push_back(i);
  return s;
}

bool Contains(const std::vector<int>& s, int i) { return std::find(s.begin(), s.end(), i) != s.end(); }

OmegaClassification Cycle(Stratum s, int phase, std::string rule) {
  OmegaClassification c;
  c.stratum = s;
  c.phase = Mod5(phase);
  c.rule = std::move(rule);
  return c;
}

OmegaClassification Infinite(int dim, std::string rule, bool near) {
  OmegaClassification c;
  c.stratum = Stratum::kInfiniteLimitSet;
  c.stratum_dim = dim;
  c.rule = std::move(rule);
  c.near_repeller = near;
  return c;
}

struct Candidate {
  std::array<double, 5> x;
  Stratum kind;
  int phase;
};

const std::vector<Candidate>& CycleCandidates() {
  static const std::vector<Candidate> candidates = [] {
    std::vector<Candidate> c;
    c.push_back({{0.2, 0.2, 0.2, 0.2, 0.2}, Stratum::kFixedPoint, -1});
    for (int j = 0; j < 5; ++j) {
      std::array<double, 5> v{};
      v[j] = 1.0;
      c.push_back({v, Stratum::kVertexCycle, j});
    }
    for (int j = 0; j < 5; ++j) {
      std::array<double, 5> t{};
      for (int i = 0; i < 3; ++i) t[Mod5(i + j)] = kThird;
      c.push_back({t, Stratum::kOneThirdCycle, j});
    }
    return c;
  }();
  return candidates;
}

double MaxNorm(const std::array<double, 5>& a, const std::array<double, 5>& b) {
  double d = 0.0;
  for (int i = 0; i < 5; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

std::string_view StratumName(Stratum s) {
  switch (s) {
    case Stratum::kFixedPoint: return "fixed_point";
    case Stratum::kVertexCycle: return "vertex_5cycle";
    case Stratum::kOneThirdCycle: return "one_third_5cycle";
    case Stratum::kInfiniteLimitSet: return "infinite_boundary_limit_set";
  }
  return "unknown";
}

std::optional<SegmentMembership> MembershipMNpi(const SimplexPoint& x0) {
  if (x0.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  for (int a = 0; a < 5; ++a) {
    const auto [d, u] = SegmentDistance(Unrotate(x0, a));
    if (d <= kStructureTolerance) return SegmentMembership{a, u};
  }
  return std::nullopt;
}

double DistanceToSegmentOrbit(const SimplexPoint& x0) {
  if (x0.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  double best = 1.0;
  for (int a = 0; a < 5; ++a) best = std::min(best, SegmentDistance(Unrotate(x0, a)).first);
  return best;
}

OmegaClassification Predict(double p, const SimplexPoint& x0) {
  SymmetricParam param(p);
  if (p == 0.0) throw Error(ErrorCode::kPZero, "every point is 5-periodic when p = 0");
  if (x0.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  const bool positive = p > 0;
  const std::vector<int> s = Support(x0);

  if (Dist(x0, FivePhaseBarycenter()) <= kStructureTolerance) {
    OmegaClassification c = Cycle(Stratum::kFixedPoint, 0, "barycenter");
    c.phase = -1;
    return c;
  }
  switch (s.size()) {
    case 1:
      return Cycle(Stratum::kVertexCycle, s[0], "periodic_vertex");
    case 2: {
      // Either {a, a+1} or {a, a+2} for a unique a.
      for (int a = 0; a < 5; ++a) {
        if (Contains(s, a) && Contains(s, Mod5(a + 1))) {
          return Cycle(Stratum::kVertexCycle, positive ? a : a + 1, "edge_adjacent");
        }
        if (Contains(s, a) && Contains(s, Mod5(a + 2))) {
          return Cycle(Stratum::kVertexCycle, positive ? a + 2 : a, "edge_skip");
        }
      }
      break;
    }
    case 3: {
      for (int a = 0; a < 5; ++a) {
        if (Contains(s, a) && Contains(s, Mod5(a + 1)) && Contains(s, Mod5(a + 2))) {
          const std::array<double, 5> y = Unrotate(x0, a);
          const double d = std::max({std::abs(y[0] - kThird), std::abs(y[1] - kThird), std::abs(y[2] - kThird)});
          if (d <= kStructureTolerance) return Cycle(Stratum::kOneThirdCycle, a, "periodic_one_third");
          return Infinite(1, "face_adjacent", d < kNearRepellerDistance);
        }
        if (Contains(s, a) && Contains(s, Mod5(a + 1)) && Contains(s, Mod5(a + 3))) {
          return Cycle(Stratum::kVertexCycle, positive ? a : a + 1, "face_skip");
        }
      }
      break;
    }
    case 4: {
      int zero = 0;
      while (Contains(s, zero)) ++zero;
      const int a = Mod5(zero + 1);
      const auto [d, u] = SegmentDistance(Unrotate(x0, a));
      (void)u;
      if (d <= kStructureTolerance) {
        return Cycle(Stratum::kOneThirdCycle, positive ? a : a + 1, "three_face_segment");
      }
      return Infinite(2, "three_face_generic", d < kNearRepellerDistance);
    }
    case 5:
      return Infinite(3, "interior", Dist(x0, FivePhaseBarycenter()) < kNearRepellerDistance);
  }
  throw Error(ErrorCode::kInvariantViolation, "unclassified support pattern");
}

EmpiricalDiagnosis Diagnose(double p, const SimplexPoint& x0, const DiagnoseOptions& options) {
  SymmetricParam param(p);
  if (x0.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  if (options.n_burn < 0 || options.n_window < 10) {
    throw Error(ErrorCode::kInvalidArgument, "need n_burn >= 0 and n_window >= 10");
  }
  auto round5 = [](std::int64_t n) { return (n + 4) / 5 * 5; };

  EmpiricalDiagnosis out;
  out.window_samples = options.n_window;
  std::unique_ptr<OrbitEngine> engine;
  const auto segment = MembershipMNpi(x0);
  const bool on_vertex = ZeroCount(x0) == 4;
  const bool at_center = Dist(x0, FivePhaseBarycenter()) <= kStructureTolerance;
  if (p != 0.0 && segment && !on_vertex) {
    // The one-third cycle repels transversally: a double start drifts off it.
    out.burn_steps = round5(std::min(options.n_burn, options.n_burn_exact));
    out.window_stride = 5;
    const std::int64_t total = out.burn_steps + out.window_stride * options.n_window;
    ExactStart start{ExactStart::Kind::kSegment, segment->rotation, segment->u};
    if (std::abs(segment->u - kThird) <= kStructureTolerance) {
      start = {ExactStart::Kind::kOneThird, segment->rotation, 0.0};
    } else if (segment->u <= kStructureTolerance) {
      start = {ExactStart::Kind::kOneThird, segment->rotation + 1, 0.0};
    }
    engine = MakeMultiprecisionEngine(p, start, MultiprecisionBits(p, total));
  } else {
    out.burn_steps = round5(options.n_burn);
    const auto span = static_cast<std::int64_t>(options.window_span_factor * static_cast<double>(out.burn_steps));
    out.window_stride = 5 * std::max<std::int64_t>(1, span / (5 * static_cast<std::int64_t>(options.n_window)));
    // The barycenter and the vertices are reproduced exactly in doubles.
    if (at_center || on_vertex) {
      engine = MakeDoubleEngine(p, at_center ? FivePhaseBarycenter() : x0);
    } else {
      engine = MakeLogEngine(p, x0);
    }
  }
  out.engine = std::string(engine->name());

  engine->Advance(out.burn_steps);
  std::vector<std::array<double, 5>> window;
  window.reserve(options.n_window);
  for (int i = 0; i < options.n_window; ++i) {
    if (i > 0) engine->Advance(out.window_stride);
    window.push_back(engine->Coords());
  }

  const auto& candidates = CycleCandidates();
  const Candidate* nearest = &candidates.front();
  for (const auto& c : candidates)
    if (MaxNorm(c.x, window.back()) < MaxNorm(nearest->x, window.back())) nearest = &c;
  double cycle_error = 0.0;
  for (const auto& x : window) cycle_error = std::max(cycle_error, MaxNorm(nearest->x, x));
  out.cycle_error = cycle_error;
  out.converged_to_cycle = cycle_error <= options.delta_cycle;
  if (out.converged_to_cycle) {
    out.cycle_kind = nearest->kind;
    out.cycle_phase = nearest->phase;
  }

  for (int k = 0; k < 5; ++k) {
    double lo = window.front()[k], hi = lo;
    for (const auto& x : window) {
      lo = std::min(lo, x[k]);
      hi = std::max(hi, x[k]);
    }
    out.late_window_diameter = std::max(out.late_window_diameter, hi - lo);
  }

  for (const auto& x : window) {
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), 5);
    for (int d = 0; d < 4; ++d) out.dist_to_skeleton[d] = std::max(out.dist_to_skeleton[d], DistanceToSkeleton(v, d));
  }
  out.observed_dim = 4;
  for (int d = 3; d >= 0; --d)
    if (out.dist_to_skeleton[d] < options.skeleton_threshold) out.observed_dim = d;

  const OrbitStats& stats = engine->stats();
  out.min_log_phi = stats.min_log_phi;
  out.min_phi = std::exp(stats.min_log_phi);
  out.phi_increase_violations = stats.phi_increase_violations;
  return out;
}

bool Agrees(const OmegaClassification& predicted, const EmpiricalDiagnosis& e, const DiagnoseOptions& options) {
  switch (predicted.stratum) {
    case Stratum::kFixedPoint:
      return e.converged_to_cycle && e.cycle_kind == Stratum::kFixedPoint;
    case Stratum::kVertexCycle:
    case Stratum::kOneThirdCycle:
      return e.converged_to_cycle && e.cycle_kind == predicted.stratum && e.cycle_phase == predicted.phase;
    case Stratum::kInfiniteLimitSet: {
      const int d = std::clamp(predicted.stratum_dim, 0, 3);
      const bool located = e.dist_to_skeleton[d] < options.skeleton_threshold;
      const bool decayed = predicted.stratum_dim < 3 || e.min_phi < options.min_phi_threshold;
      return !e.converged_to_cycle && e.late_window_diameter > options.delta_noconv && located && decayed;
    }
  }
  return false;
}

int WorkerCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QSO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BasinScanResult BasinScan(double p, int resolution, const BasinOptions& options) {
  if (resolution > kMaxBasinResolution) {
    std::ostringstream msg;
    msg << "resolution " << resolution << " exceeds " << kMaxBasinResolution;
    throw Error(ErrorCode::kResolutionTooHigh, msg.str());
  }
  if (resolution < 1) throw Error(ErrorCode::kInvalidArgument, "resolution must be positive");
  if (p == 0.0) throw Error(ErrorCode::kPZero, "every point is 5-periodic when p = 0");
  SymmetricParam param(p);

  const int n = resolution;
  std::vector<std::array<int, 5>> lattice;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c)
        for (int d = 0; a + b + c + d <= n; ++d) lattice.push_back({a, b, c, d, n - a - b - c - d});

  std::vector<bool> verify(lattice.size(), false);
  if (options.verify_samples > 0) {
    std::vector<size_t> all(lattice.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<size_t> picked;
    std::mt19937_64 rng(options.seed);
    std::sample(all.begin(), all.end(), std::back_inserter(picked),
                std::min<size_t>(options.verify_samples, all.size()), rng);
    for (size_t i : picked) verify[i] = true;
  }

  std::vector<std::optional<BasinEntry>> slots(lattice.size());
  const int workers = std::min<int>(WorkerCount(options.threads), static_cast<int>(lattice.size()));
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](int w) {
    try {
      for (size_t i = w; i < lattice.size(); i += workers) {
        Eigen::VectorXd x(5);
        for (int k = 0; k < 5; ++k) x[k] = static_cast<double>(lattice[i][k]) / n;
        const SimplexPoint point = SimplexPoint::Make(x);
        OmegaClassification c = Predict(p, point);
        if (verify[i]) c.empirical = Diagnose(p, point, options.diagnose);
        slots[i] = BasinEntry{lattice[i], point, std::move(c)};
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  BasinScanResult result{p, n, {}};
  result.entries.reserve(lattice.size());
  for (auto& s : slots) result.entries.push_back(std::move(*s));
  return result;
}

}  // namespace qso
