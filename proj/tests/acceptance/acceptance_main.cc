// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.h"
#include "qso/classifier.h"
#include "qso/operators.h"
#include "qso/orbits.h"
#include "qso/reduced_maps.h"
#include "qso/simplex.h"
#include "qso/spectral.h"

namespace {

using namespace qso;

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::vector<double> SymmetricGrid() {
  std::vector<double> ps;
  for (int i = -8; i <= 8; ++i) ps.push_back(i / 8.0);
  return ps;
}

double Gap(const SimplexPoint& a, const SimplexPoint& b) { return Dist(a, b); }

SimplexPoint FromOracle(const oracle::Vec5& x) {
  return SimplexPoint::Normalize(Eigen::Map<const Eigen::VectorXd>(x.data(), 5));
}

SimplexPoint Embed(std::initializer_list<double> head) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  int i = 0;
  for (double v : head) x[i++] = v;
  return SimplexPoint::Normalize(x);
}

Outcome VertexCycle() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Operator> ops;
  for (int t = 0; t < 50; ++t) {
    CfepParams c;
    for (double* v : {&c.a, &c.b, &c.c, &c.d, &c.alpha, &c.beta, &c.gamma, &c.delta, &c.theta, &c.omega})
      *v = u01(rng);
    ops.push_back(Operator::CfepW(c));
  }
  for (int i = -100; i <= 100; ++i) ops.push_back(Operator::SymmetricW(SymmetricParam(i / 100.0)));
  double worst = 0;
  for (const Operator& w : ops)
    for (int i = 0; i < 5; ++i)
      worst = std::max(worst, Gap(w.Apply(SimplexPoint::Vertex(5, i)), SimplexPoint::Vertex(5, (i + 1) % 5)));
  return {worst <= 1e-15, std::to_string(ops.size()) + " operators, max error " + Fmt("%.3g", worst)};
}

Outcome Composition() {
  std::mt19937_64 rng(102);
  double step = 0, power = 0;
  for (double p : SymmetricGrid()) {
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    const Operator v = Operator::SymmetricV(SymmetricParam(p));
    for (int t = 0; t < 1000; ++t) {
      const SimplexPoint x = RandomSimplexPoint(5, rng);
      step = std::max(step, Gap(w.Apply(x), ApplyTpi(v.Apply(x))));
      if (t % 10 != 0) continue;
      SimplexPoint wn = x, vn = x;
      for (int n = 1; n <= 50; ++n) {
        wn = w.Apply(wn);
        vn = v.Apply(vn);
        power = std::max(power, Gap(wn, ApplyTpiPower(vn, n % 5)));
      }
    }
  }
  return {step <= 1e-14 && power <= 1e-11,
          "max |W - T V| " + Fmt("%.3g", step) + ", max |W^n - T^i V^n| " + Fmt("%.3g", power)};
}

Outcome FixedPointUniqueness() {
  bool ok = true;
  double worst_residual = 0, worst_dist = 0;
  std::size_t most_roots = 0;
  for (double p : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    const FixedPointSearch s = FindFixedPoints(w, 100, 103);
    most_roots = std::max(most_roots, s.roots.size());
    ok = ok && s.roots.size() == 1;
    for (const SimplexPoint& r : s.roots) worst_dist = std::max(worst_dist, Dist(r, FivePhaseBarycenter()));
    worst_residual = std::max(worst_residual, FixedPointResidual(w, FivePhaseBarycenter()));
  }
  ok = ok && worst_dist <= 1e-12 && worst_residual <= 1e-14;
  return {ok, "max roots " + std::to_string(most_roots) + ", max |root - P| " + Fmt("%.3g", worst_dist) +
                  ", residual at P " + Fmt("%.3g", worst_residual)};
}

Outcome Spectral() {
  double coeff = 0, literal = 0, squared = 0, jacobian = 0;
  for (double q : {-0.2, -0.1, -0.04, 0.04, 0.1, 0.2}) {
    const QuarticCoeffs c = CharacteristicQuartic(q);
    const std::array<double, 5> want = oracle::Quartic(q);
    const double got[5] = {c.c4, c.c3, c.c2, c.c1, c.c0};
    for (int i = 0; i < 5; ++i)
      coeff = std::max(coeff, std::abs(got[i] - want[i]) / std::max(1.0, std::abs(want[i])));

    std::vector<double> mod;
    for (const auto& l : QuarticRoots(c)) mod.push_back(std::abs(l));
    std::sort(mod.begin(), mod.end());
    const auto [f1, f2] = EigenModuli(q);
    // Roots come in two conjugate pairs, the smaller pair belongs to f1.
    const double fs[4] = {f1, f1, f2, f2};
    for (int i = 0; i < 4; ++i) {
      literal = std::max(literal, std::abs(mod[i] - fs[i]));
      squared = std::max(squared, std::abs(mod[i] * mod[i] - fs[i]));
    }

    std::vector<double> jm;
    for (const auto& l : TangentSpectrum(Operator::SymmetricW(SymmetricParam(5 * q)), FivePhaseBarycenter()))
      jm.push_back(std::abs(l));
    std::sort(jm.begin(), jm.end());
    for (int i = 0; i < 4; ++i) jacobian = std::max(jacobian, std::abs(jm[i] - mod[i]));
  }
  double worst_d = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 400; ++i) worst_d = std::max(worst_d, DiscriminantD(-0.2 + 0.4 * i / 400));
  const bool coeff_ok = coeff <= 4 * std::numeric_limits<double>::epsilon();
  const bool ok = coeff_ok && literal <= 1e-9 && jacobian <= 1e-9 && worst_d < 0;
  return {ok, "coeff rel err " + Fmt("%.3g", coeff) + ", |root| vs {f1,f2} " + Fmt("%.3g", literal) +
                  (literal <= 1e-9 ? "" : " > 1e-9") + ", |root| vs Jacobian " + Fmt("%.3g", jacobian) +
                  ", max D " + Fmt("%.3g", worst_d) + "; supplemental |root|^2 vs {f1,f2} " +
                  Fmt("%.3g", squared)};
}

Outcome PeriodicCensus() {
  const std::vector<SimplexPoint> sols = SolvePe2();
  const auto lattice = oracle::LatticePeriodicCandidates(60, 1e-12);
  int extra = 0;
  for (const auto& y : lattice) {
    double nearest = 1;
    for (const SimplexPoint& x : sols) nearest = std::min(nearest, Dist(x, FromOracle(y)));
    extra += nearest > 1e-3;
  }
  bool orbits_ok = true;
  for (double p : {-0.9, -0.3, 0.3, 0.9}) {
    const Operator w = Operator::SymmetricW(SymmetricParam(p));
    // Step tolerance 1e-12 gives a per-period bound of 5e-12.
    orbits_ok = orbits_ok && VerifyOrbit(w, TpiClosure(SimplexPoint::Vertex(5, 0), p), 1e-12);
    orbits_ok = orbits_ok && VerifyOrbit(w, TpiClosure(OneThirdPoint(0), p), 1e-12);
  }
  return {sols.size() == 11 && extra == 0 && orbits_ok,
          std::to_string(sols.size()) + " solutions, " + std::to_string(lattice.size()) + " lattice hits, " +
              std::to_string(extra) + " extra, orbits " + (orbits_ok ? "verified" : "FAILED")};
}

Outcome EdgeDynamics() {
  double fidelity = 0, deriv = 0;
  for (double p : SymmetricGrid()) {
    const SymmetricParam sp(p);
    const Operator w = Operator::SymmetricW(sp);
    for (int i = 0; i < 100; ++i) {
      const double x = i / 99.0;
      const SimplexPoint a = Power(w, Embed({x, 1 - x}), 5), b = Power(w, Embed({x, 0, 1 - x}), 5);
      fidelity = std::max({fidelity, std::abs(EdgeF(sp, x) - a[0]), std::abs(EdgeG(sp, x) - b[0])});
    }
    const EdgeDerivatives d = EdgeDerivativesAt(sp);
    const double h = 1e-6;
    auto fd = [h](auto f, double x) { return (f(x + h) - f(x - h)) / (2 * h); };
    auto fa = [p](double x) { return oracle::AdjacentEdgeReturn(p, x); };
    auto fs = [p](double x) { return oracle::SkipEdgeReturn(p, x); };
    deriv = std::max({deriv, std::abs(fd(fa, 0) - d.F0), std::abs(fd(fa, 1) - d.F1), std::abs(fd(fs, 0) - d.G0),
                      std::abs(fd(fs, 1) - d.G1)});
  }
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> ux(0.01, 0.99), up(0.05, 1.0);
  int wrong = 0;
  for (double sign : {-1.0, 1.0}) {
    for (int t = 0; t < 20; ++t) {
      const double p = sign * up(rng), x0 = ux(rng);
      wrong += EdgeLimit(SymmetricParam(p), x0, EdgeReturnMap::kF).limit != (oracle::AdjacentEdgePhase(p) == 0);
      wrong += EdgeLimit(SymmetricParam(p), x0, EdgeReturnMap::kG).limit != (oracle::SkipEdgePhase(p) == 0);
    }
  }
  return {fidelity <= 1e-12 && deriv <= 1e-5 && wrong == 0,
          "W^5 gap " + Fmt("%.3g", fidelity) + ", derivative gap " + Fmt("%.3g", deriv) + ", limit mismatches " +
              std::to_string(wrong) + "/80"};
}

Outcome FaceDynamics() {
  std::mt19937_64 rng(107);
  double relabel = 0, case1 = 0;
  for (double p : SymmetricGrid()) {
    const SymmetricParam sp(p);
    const FaceOperator a(FaceKind::kA, sp), b(FaceKind::kB, sp), tau(FaceKind::kTau, sp);
    const Operator w = Operator::SymmetricW(sp);
    for (int t = 0; t < 100; ++t) {
      const SimplexPoint x = RandomSimplexPoint(3, rng);
      relabel = std::max(relabel, Dist(b.Apply(x), tau.Apply(a.Apply(x))));
      const SimplexPoint full = Power(w, Embed({x[0], x[1], x[2]}), 5);
      const SimplexPoint reduced = FaceCase1Reduction(sp, x).a_power;
      for (int i = 0; i < 3; ++i) case1 = std::max(case1, std::abs(full[i] - reduced[i]));
    }
  }
  std::uniform_real_distribution<double> up(0.05, 1.0);
  int wrong = 0;
  double reach = 0;
  for (double sign : {-1.0, 1.0}) {
    for (int t = 0; t < 20; ++t) {
      const SymmetricParam sp(sign * up(rng));
      const SimplexPoint x0 = RandomSimplexPoint(3, rng);
      const HatVLimitResult r = HatVLimit(sp, x0);
      const int want = oracle::SkipFacePhase(sp.p());
      wrong += r.vertex != want;
      const FaceOperator hat(FaceKind::kHatV, sp);
      SimplexPoint y = x0;
      for (std::int64_t n = 0; n < r.steps; ++n) y = hat.Apply(y);
      reach = std::max(reach, Dist(y, SimplexPoint::Vertex(3, want)));
    }
  }
  return {relabel <= 1e-14 && case1 <= 1e-12 && wrong == 0 && reach <= 1e-10,
          "|B - tau A| " + Fmt("%.3g", relabel) + ", case-1 gap " + Fmt("%.3g", case1) + ", vertex mismatches " +
              std::to_string(wrong) + "/40, final distance " + Fmt("%.3g", reach)};
}

Outcome Segment() {
  double residual = 0;
  for (double p : SymmetricGrid())
    for (int i = 0; i <= 100; ++i) residual = std::max(residual, SegmentInvarianceResidual(SymmetricParam(p), i / 300.0));
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> uu(0.01, 1.0 / 3 - 0.01), up(0.05, 1.0);
  int wrong = 0;
  for (double sign : {-1.0, 1.0})
    for (int t = 0; t < 10; ++t)
      wrong += SegmentLimit(SymmetricParam(sign * up(rng)), uu(rng)).endpoint != (sign > 0 ? 'M' : 'N');
  return {residual <= 1e-14 && wrong == 0,
          "invariance residual " + Fmt("%.3g", residual) + ", endpoint mismatches " + std::to_string(wrong) + "/20"};
}

Outcome InteriorNonConvergence() {
  std::mt19937_64 rng(109);
  DiagnoseOptions o;
  o.n_burn = 100'000;
  int bad = 0;
  double worst_log10_phi = -std::numeric_limits<double>::infinity(), least_diameter = 1;
  std::int64_t violations = 0;
  for (double p : {-0.5, 0.5}) {
    for (int t = 0; t < 50; ++t) {
      const SimplexPoint x0 = FromOracle(oracle::RandomInterior(rng));
      const EmpiricalDiagnosis d = Diagnose(p, x0, o);
      worst_log10_phi = std::max(worst_log10_phi, d.min_log_phi / std::log(10.0));
      least_diameter = std::min(least_diameter, d.late_window_diameter);
      violations += d.phi_increase_violations;
      bad += !(d.min_phi < 1e-6 && d.phi_increase_violations == 0 && d.late_window_diameter > 1e-2);
    }
  }
  return {bad == 0, "failures " + std::to_string(bad) + "/100, largest min-phi 10^" + Fmt("%.4g", worst_log10_phi) +
                        ", phi increases " + std::to_string(violations) + ", min window diameter " +
                        Fmt("%.3g", least_diameter)};
}

Outcome AmGm() {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> up(-1.0, 1.0);
  double worst = 0, identity = 0;
  int checked = 0;
  for (int t = 0; t < 100'000; ++t) {
    const double p = up(rng);
    const SimplexPoint x = RandomSimplexPoint(5, rng);
    const double psi = Psi(x, p);
    worst = std::max(worst, psi);
    const double phi = Phi(x);
    if (phi > 1e-8) {
      const Eigen::VectorXd wx = Operator::SymmetricW(SymmetricParam(p)).ApplyRaw(x.coords());
      identity = std::max(identity, std::abs(wx.prod() / phi - psi) / psi);
      ++checked;
    }
  }
  return {worst <= 1 + 1e-12 && identity <= 1e-10,
          "max psi " + Fmt("%.17g", worst) + ", identity rel err " + Fmt("%.3g", identity) + " over " +
              std::to_string(checked) + " points"};
}

// Starts for each stratum of the classifier.
enum class DrawKind { kFixed, kVertex, kOneThird, kDim1, kDim2, kDim3 };

SimplexPoint Rotate(const Eigen::VectorXd& head, int k) { return ApplyTpiPower(SimplexPoint::Normalize(head), k); }

SimplexPoint DrawStart(DrawKind kind, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rot(0, 4);
  const int k = rot(rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  switch (kind) {
    case DrawKind::kFixed:
      return FivePhaseBarycenter();
    case DrawKind::kVertex: {
      // Vertex, adjacent edge, skip edge or skip face, in turn.
      std::uniform_int_distribution<int> which(0, 3);
      const int w = which(rng);
      if (w == 0) return SimplexPoint::Vertex(5, k);
      const SimplexPoint y = RandomSimplexPoint(w == 3 ? 3 : 2, rng);
      if (w == 1) x << y[0], y[1], 0, 0, 0;
      if (w == 2) x << y[0], 0, y[1], 0, 0;
      if (w == 3) x << y[0], y[1], 0, y[2], 0;
      return Rotate(x, k);
    }
    case DrawKind::kOneThird: {
      std::uniform_real_distribution<double> u(0.0, 1.0 / 3);
      const double v = u(rng);
      x << v, 1.0 / 3, 1.0 / 3, 1.0 / 3 - v, 0;
      return Rotate(x, k);
    }
    case DrawKind::kDim1: {
      const SimplexPoint y = RandomSimplexPoint(3, rng);
      x << y[0], y[1], y[2], 0, 0;
      return Rotate(x, k);
    }
    case DrawKind::kDim2: {
      const SimplexPoint y = RandomSimplexPoint(4, rng);
      x << y[0], y[1], y[2], y[3], 0;
      return Rotate(x, k);
    }
    case DrawKind::kDim3:
      return RandomSimplexPoint(5, rng);
  }
  return FivePhaseBarycenter();
}

Outcome ClassifierCoherence() {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> up(0.05, 0.9);
  std::bernoulli_distribution sign(0.5);
  const std::pair<DrawKind, const char*> kinds[] = {
      {DrawKind::kFixed, "fixed"}, {DrawKind::kVertex, "vertex"}, {DrawKind::kOneThird, "one_third"},
      {DrawKind::kDim1, "dim1"},   {DrawKind::kDim2, "dim2"},     {DrawKind::kDim3, "dim3"}};
  bool ok = true;
  std::string detail;
  int total = 0, total_agree = 0;
  for (const auto& [kind, label] : kinds) {
    int agree = 0, unflagged = 0;
    for (int t = 0; t < 200; ++t) {
      const double p = (sign(rng) ? 1 : -1) * up(rng);
      const SimplexPoint x0 = DrawStart(kind, rng);
      const OmegaClassification c = Predict(p, x0);
      const bool a = Agrees(c, Diagnose(p, x0));
      agree += a;
      unflagged += !a && !c.near_repeller;
    }
    total += 200;
    total_agree += agree;
    ok = ok && agree >= 198 && unflagged == 0;
    detail += std::string(detail.empty() ? "" : ", ") + label + " " + std::to_string(agree) + "/200";
    if (unflagged) detail += " (" + std::to_string(unflagged) + " unflagged)";
  }
  return {ok, detail + "; overall " + Fmt("%.4f", double(total_agree) / total)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "vertex 5-cycle", 1, VertexCycle},
      {2, "composition identities", 10, Composition},
      {3, "fixed-point uniqueness", 5, FixedPointUniqueness},
      {4, "spectral reproduction", 2, Spectral},
      {5, "periodic census", 30, PeriodicCensus},
      {6, "edge dynamics", 10, EdgeDynamics},
      {7, "face dynamics", 20, FaceDynamics},
      {8, "segment", 10, Segment},
      {9, "interior non-convergence", 60, InteriorNonConvergence},
      {10, "AM-GM bound", 5, AmGm},
      {11, "classifier coherence", 300, ClassifierCoherence},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool passed = r.passed && in_time;
    failures += !passed;
    std::printf("[%s] %2d %s: %s; %.2f s (limit %g s%s)\n", passed ? "PASS" : "FAIL", c.id, c.name,
                r.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
