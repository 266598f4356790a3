#include "qso/cli.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "qso/classifier.h"
#include "qso/error.h"
#include "qso/io.h"
#include "qso/operators.h"
#include "qso/orbits.h"
#include "qso/reduced_maps.h"
#include "qso/spectral.h"
#include "qso/verify.h"

namespace qso {
namespace {

using nlohmann::json;

constexpr double kSpectrumRange = 0.2;

struct Flags {
  bool p = false, variant = false, operator_file = false, x0 = false, n = false, thin = false;
  bool format = false, seed = false, q_grid = false, resolution = false, verify_samples = false;
  bool threads = false, map = false, diagnose = false, burn = false;
};

Flags FlagsFor(const std::string& command) {
  Flags f;
  if (command == "iterate") {
    f.p = f.variant = f.operator_file = f.x0 = f.n = f.thin = f.format = true;
  } else if (command == "classify") {
    f.p = f.x0 = f.diagnose = f.burn = true;
  } else if (command == "basin") {
    f.p = f.resolution = f.verify_samples = f.seed = f.threads = f.burn = true;
  } else if (command == "spectrum") {
    f.q_grid = true;
  } else if (command == "periodic") {
    f.p = true;
  } else if (command == "edge" || command == "face") {
    f.p = f.x0 = f.n = f.map = true;
  } else if (command == "verify") {
    f.seed = true;
  }
  return f;
}

const char* const kCommands[][2] = {
    {"iterate", "iterate an operator from x0 (CSV or JSON trajectory)"},
    {"classify", "predict the limit behavior of x0, optionally checked by simulation (JSON)"},
    {"basin", "classify every lattice point k/n of S^4 (CSV)"},
    {"spectrum", "linearization at the barycenter over a q grid (CSV)"},
    {"periodic", "solutions of W(x) = T(x) and their orbit kinds (JSON)"},
    {"edge", "iterate an edge return map (CSV)"},
    {"face", "iterate V-hat on a triangle or tilde-V on the invariant segment (CSV)"},
    {"verify", "run the invariant suite (JSON); exit 1 on any failure"},
};

std::vector<double> ParseX0(const std::string& text) { return ParseNumberList(text); }

template <typename T>
T Require(const std::optional<T>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::kInvalidArgument, std::string("missing --") + flag);
  return *v;
}

// Lattice of the q grid "a:b:step"; endpoints are hit exactly.
std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ':')) {
    const std::vector<double> v = ParseNumberList(cell);
    if (v.size() != 1) throw Error(ErrorCode::kInvalidArgument, "grid must be a:b:step");
    parts.push_back(v[0]);
  }
  if (parts.size() != 3) throw Error(ErrorCode::kInvalidArgument, "grid must be a:b:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0) || b < a) throw Error(ErrorCode::kInvalidArgument, "grid needs a <= b and step > 0");
  const double intervals = (b - a) / step;
  const long count = std::lround(intervals);
  if (std::abs(intervals - count) > 1e-9 * std::max(1.0, intervals)) {
    throw Error(ErrorCode::kInvalidArgument, "grid step does not divide b - a");
  }
  std::vector<double> grid;
  for (long i = 0; i <= count; ++i) grid.push_back(count == 0 ? a : a + (b - a) * i / count);
  return grid;
}

Operator BuildOperator(const RunConfig& c) {
  if (c.operator_spec) return ParseOperator(*c.operator_spec);
  const SymmetricParam p(Require(c.p, "p"));
  const std::string variant = c.variant.value_or("W");
  if (variant == "W") return Operator::SymmetricW(p);
  if (variant == "V") return Operator::SymmetricV(p);
  throw Error(ErrorCode::kInvalidArgument, "--variant must be W or V");
}

SimplexPoint StartPoint(const RunConfig& c, int dim) {
  const SimplexPoint x = SimplexPoint::Make(Require(c.x0, "x0"));
  if (x.dim() != dim) {
    throw Error(ErrorCode::kDimMismatch,
                "x0 has " + std::to_string(x.dim()) + " coordinates, expected " + std::to_string(dim));
  }
  return x;
}

std::vector<std::string> CoordinateHeader(const char* first, int m) {
  std::vector<std::string> h = {first};
  for (int i = 1; i <= m; ++i) h.push_back("x" + std::to_string(i));
  return h;
}

json Envelope(const std::string& command) { return json{{"schema_version", kSchemaVersion}, {"command", command}}; }

int RunIterate(const RunConfig& c, std::ostream& out) {
  const Operator op = BuildOperator(c);
  const SimplexPoint x0 = StartPoint(c, op.dim());
  const std::int64_t n = c.n.value_or(100);
  const int thin = c.thin.value_or(1);
  if (n < 0 || thin < 1) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 0 and --thin >= 1");
  const TrajectoryRecord rec = Iterate(op, x0, n, thin);
  const std::string format = c.format.value_or("csv");
  if (format == "csv") {
    CsvWriter csv(out, CoordinateHeader("step", op.dim()));
    for (size_t i = 0; i < rec.points.size(); ++i) {
      std::vector<double> row = {static_cast<double>(rec.steps[i])};
      for (double v : rec.points[i].ToVector()) row.push_back(v);
      csv.Row(row);
    }
  } else if (format == "json") {
    json j = Envelope("iterate");
    j["operator"] = OperatorToJson(op);
    j["x0"] = PointToJson(x0);
    j["n"] = n;
    j["thin"] = thin;
    json traj = json::array();
    for (size_t i = 0; i < rec.points.size(); ++i) traj.push_back({{"step", rec.steps[i]}, {"x", PointToJson(rec.points[i])}});
    j["trajectory"] = std::move(traj);
    out << j.dump(2) << '\n';
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--format must be csv or json");
  }
  return kExitOk;
}

json EmpiricalJson(const EmpiricalDiagnosis& d) {
  json j = {{"engine", d.engine},
            {"burn_steps", d.burn_steps},
            {"window_stride", d.window_stride},
            {"window_samples", d.window_samples},
            {"converged_to_cycle", d.converged_to_cycle},
            {"cycle_phase", d.cycle_phase},
            {"cycle_error", d.cycle_error},
            {"late_window_diameter", d.late_window_diameter},
            {"min_phi", d.min_phi},
            {"min_log_phi", d.min_log_phi},
            {"phi_increase_violations", d.phi_increase_violations},
            {"dist_to_skeleton", d.dist_to_skeleton},
            {"observed_dim", d.observed_dim}};
  j["cycle_kind"] = d.cycle_kind ? json(std::string(StratumName(*d.cycle_kind))) : json(nullptr);
  return j;
}

DiagnoseOptions DiagnoseFrom(const RunConfig& c) {
  DiagnoseOptions o;
  if (c.n_burn) o.n_burn = *c.n_burn;
  if (c.n_window) o.n_window = *c.n_window;
  if (o.n_burn < 0 || o.n_window < 10) throw Error(ErrorCode::kInvalidArgument, "--n-burn >= 0 and --n-window >= 10");
  return o;
}

int RunClassify(const RunConfig& c, std::ostream& out) {
  const double p = Require(c.p, "p");
  const SimplexPoint x0 = StartPoint(c, 5);
  SymmetricParam{p};  // range check
  json j = Envelope("classify");
  j["p"] = p;
  j["x0"] = PointToJson(x0);
  if (p == 0) {
    // W is the cyclic shift: every point is periodic with period dividing 5.
    int period = 5;
    for (int k = 1; k < 5; ++k)
      if (5 % k == 0 && Dist(ApplyTpiPower(x0, k), x0) == 0) period = std::min(period, k);
    j["stratum"] = "permutation_periodic";
    j["period"] = period;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  OmegaClassification cls = Predict(p, x0);
  j["stratum"] = std::string(StratumName(cls.stratum));
  j["phase"] = cls.phase;
  j["stratum_dim"] = cls.stratum_dim;
  j["rule"] = cls.rule;
  j["near_repeller"] = cls.near_repeller;
  if (c.diagnose.value_or(false)) {
    const DiagnoseOptions options = DiagnoseFrom(c);
    const EmpiricalDiagnosis d = Diagnose(p, x0, options);
    j["empirical"] = EmpiricalJson(d);
    j["agrees"] = Agrees(cls, d, options);
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int RunBasin(const RunConfig& c, std::ostream& out) {
  BasinOptions options;
  options.verify_samples = c.verify_samples.value_or(0);
  options.seed = c.seed.value_or(kDefaultVerifySeed);
  options.threads = c.threads.value_or(0);
  options.diagnose = DiagnoseFrom(c);
  if (options.verify_samples < 0 || options.threads < 0) {
    throw Error(ErrorCode::kInvalidArgument, "--verify-samples and --threads must be >= 0");
  }
  const double p = Require(c.p, "p");
  SymmetricParam{p};
  const BasinScanResult scan = BasinScan(p, c.resolution.value_or(10), options);
  CsvWriter csv(out, {"x1", "x2", "x3", "x4", "x5", "stratum", "phase", "stratum_dim", "rule", "near_repeller",
                      "verified", "agrees"});
  for (const BasinEntry& e : scan.entries) {
    std::vector<std::string> row;
    for (int i = 0; i < 5; ++i) row.push_back(FormatDouble(e.point[i]));
    const OmegaClassification& k = e.classification;
    row.push_back(std::string(StratumName(k.stratum)));
    row.push_back(std::to_string(k.phase));
    row.push_back(std::to_string(k.stratum_dim));
    row.push_back(k.rule);
    row.push_back(k.near_repeller ? "1" : "0");
    row.push_back(k.empirical ? "1" : "0");
    row.push_back(k.empirical ? (Agrees(k, *k.empirical, options.diagnose) ? "1" : "0") : "");
    csv.Row(row);
  }
  return kExitOk;
}

int RunSpectrum(const RunConfig& c, std::ostream& out) {
  const std::vector<double> grid = ParseGrid(c.q_grid.value_or("-0.2:0.2:0.01"));
  for (double q : grid) {
    if (std::abs(q) > kSpectrumRange) throw Error(ErrorCode::kParamRange, "q grid must lie in [-0.2, 0.2]");
  }
  CsvWriter csv(out, {"q", "c3", "c2", "c1", "c0", "D", "f1", "f2", "max_modulus"});
  for (double q : grid) {
    const QuarticCoeffs k = CharacteristicQuartic(q);
    const auto [f1, f2] = EigenModuli(q);
    double max_modulus = 0;
    for (const auto& z : QuarticRoots(k)) max_modulus = std::max(max_modulus, std::abs(z));
    csv.Row(std::vector<double>{q, k.c3, k.c2, k.c1, k.c0, DiscriminantD(q), f1, f2, max_modulus});
  }
  return kExitOk;
}

int RunPeriodic(const RunConfig& c, std::ostream& out) {
  const double check_p = c.p.value_or(1.0);
  if (check_p == 0) throw Error(ErrorCode::kPZero, "the W/T check needs p != 0");
  json j = Envelope("periodic");
  j["check_p"] = check_p;
  json sols = json::array();
  for (const SimplexPoint& x : SolvePe2()) {
    const PeriodicOrbit orbit = TpiClosure(x, check_p);
    sols.push_back({{"x", PointToJson(x)},
                    {"residual", ResidualPe2(x).cwiseAbs().maxCoeff()},
                    {"orbit_kind", std::string(OrbitKindName(orbit.kind))},
                    {"period", orbit.period}});
  }
  j["count"] = sols.size();
  j["solutions"] = std::move(sols);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int RunEdge(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SymmetricParam p(Require(c.p, "p"));
  const std::vector<double> x0 = Require(c.x0, "x0");
  if (x0.size() != 1) throw Error(ErrorCode::kDimMismatch, "edge --x0 takes the single coordinate x");
  const std::string which = c.map.value_or("F");
  if (which != "F" && which != "G") throw Error(ErrorCode::kInvalidArgument, "edge --map must be F or G");
  const EdgeMaps maps(p);
  const std::int64_t n = c.n.value_or(100);
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 0");

  double limit = std::numeric_limits<double>::quiet_NaN();
  int code = kExitOk;
  try {
    limit = EdgeLimit(p, x0[0], which == "F" ? EdgeReturnMap::kF : EdgeReturnMap::kG).limit;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoConvergence) throw;
    err << e.what() << '\n';
    code = kExitNoConvergence;
  }
  CsvWriter csv(out, {"step", "x", "one_minus_x", "distance_to_limit"});
  double x = x0[0];
  for (std::int64_t s = 0; s <= n; ++s) {
    csv.Row(std::vector<double>{static_cast<double>(s), x, 1 - x, std::abs(x - limit)});
    x = which == "F" ? maps.F(x) : maps.G(x);
  }
  return code;
}

int RunFace(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const SymmetricParam p(Require(c.p, "p"));
  const std::string which = c.map.value_or("hatv");
  const std::int64_t n = c.n.value_or(100);
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 0");

  std::optional<SimplexPoint> x;
  std::optional<FaceOperator> op;
  std::optional<SimplexPoint> limit;
  int code = kExitOk;
  try {
    if (which == "hatv") {
      x = StartPoint(c, 3);
      op.emplace(FaceKind::kHatV, p);
      limit = SimplexPoint::Vertex(3, HatVLimit(p, *x).vertex);
    } else if (which == "segment") {
      const std::vector<double> u = Require(c.x0, "x0");
      if (u.size() != 1 || !(u[0] >= 0 && u[0] <= 1.0 / 3)) {
        throw Error(ErrorCode::kInvalidArgument, "segment --x0 takes u in [0, 1/3]");
      }
      x = SegmentPoint(u[0]);
      op.emplace(FaceKind::kTildeV, p);
      limit = SegmentLimit(p, u[0]).point;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "face --map must be hatv or segment");
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoConvergence || !op) throw;
    err << e.what() << '\n';
    code = kExitNoConvergence;
  }
  std::vector<std::string> header = CoordinateHeader("step", x->dim());
  header.push_back("distance_to_limit");
  CsvWriter csv(out, header);
  SimplexPoint y = *x;
  for (std::int64_t s = 0; s <= n; ++s) {
    std::vector<double> row = {static_cast<double>(s)};
    for (double v : y.ToVector()) row.push_back(v);
    row.push_back(limit ? Dist(y, *limit) : std::numeric_limits<double>::quiet_NaN());
    csv.Row(row);
    y = op->Apply(y);
  }
  return code;
}

int RunVerify(const RunConfig& c, std::ostream& out) {
  const std::uint64_t seed = c.seed.value_or(kDefaultVerifySeed);
  const std::vector<InvariantResult> results = VerifyAll(seed);
  json j = Envelope("verify");
  j["seed"] = seed;
  bool all = true;
  json list = json::array();
  for (const InvariantResult& r : results) {
    all = all && r.passed;
    list.push_back({{"name", r.name},
                    {"passed", r.passed},
                    {"measured", r.measured},
                    {"tolerance", r.tolerance},
                    {"detail", r.detail}});
  }
  j["passed"] = all;
  j["invariants"] = std::move(list);
  out << j.dump(2) << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

int Dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "iterate") return RunIterate(c, out);
  if (c.command == "classify") return RunClassify(c, out);
  if (c.command == "basin") return RunBasin(c, out);
  if (c.command == "spectrum") return RunSpectrum(c, out);
  if (c.command == "periodic") return RunPeriodic(c, out);
  if (c.command == "edge") return RunEdge(c, out, err);
  if (c.command == "face") return RunFace(c, out, err);
  if (c.command == "verify") return RunVerify(c, out);
  throw Error(ErrorCode::kInvalidArgument, "unknown command \"" + c.command + "\"");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoConvergence:
      return kExitNoConvergence;
    case ErrorCode::kIo:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

}  // namespace

std::optional<RunConfig> ParseArgs(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  std::optional<std::string> x0_text;
  std::optional<std::string> operator_file;
  bool diagnose = false;

  CLI::App app{"Five-phase quadratic stochastic operator toolkit"};
  app.require_subcommand(1, 1);
  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    const Flags f = FlagsFor(name);
    sub->add_option("--config", c.config_path, "JSON file of defaults; flags override it");
    sub->add_option("-o,--output", c.output, "write the artifact here instead of stdout");
    if (f.p) sub->add_option("--p", c.p, "operator parameter in [-1, 1]");
    if (f.variant) sub->add_option("--variant", c.variant, "W (default) or V");
    if (f.operator_file) sub->add_option("--operator", operator_file, "JSON operator definition file");
    if (f.x0) sub->add_option("--x0", x0_text, "comma-separated start point");
    if (f.n) sub->add_option("--n", c.n, "number of steps");
    if (f.thin) sub->add_option("--thin", c.thin, "keep every k-th iterate");
    if (f.format) sub->add_option("--format", c.format, "csv (default) or json");
    if (f.seed) sub->add_option("--seed", c.seed, "random seed");
    if (f.q_grid) sub->add_option("--q-grid", c.q_grid, "a:b:step, default -0.2:0.2:0.01");
    if (f.resolution) sub->add_option("--resolution", c.resolution, "lattice denominator (<= 60)");
    if (f.verify_samples) sub->add_option("--verify-samples", c.verify_samples, "entries to simulate");
    if (f.threads) sub->add_option("--threads", c.threads, "worker threads (0: QSO_THREADS or all cores)");
    if (f.map) sub->add_option("--map", c.map, name == std::string("edge") ? "F or G" : "hatv or segment");
    if (f.diagnose) sub->add_flag("--diagnose", diagnose, "simulate and compare with the prediction");
    if (f.burn) {
      sub->add_option("--n-burn", c.n_burn, "burn-in steps for the simulation");
      sub->add_option("--n-window", c.n_window, "window samples for the simulation");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->get_help_ptr() && sub->get_help_ptr()->count()) {
      out << sub->help();
      return std::nullopt;
    }
  }
  if (x0_text) c.x0 = ParseX0(*x0_text);
  if (operator_file) c.operator_spec = ReadJsonFile(*operator_file);
  if (diagnose) c.diagnose = true;
  return c;
}

void ApplyConfigJson(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  auto take = [&](const char* key, auto& field) {
    if (field || !j.contains(key)) return;
    using T = typename std::decay_t<decltype(field)>::value_type;
    try {
      field = j.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, std::string("config field \"") + key + "\": " + e.what());
    }
  };
  take("p", c.p);
  take("variant", c.variant);
  take("n", c.n);
  take("thin", c.thin);
  take("output", c.output);
  take("format", c.format);
  take("seed", c.seed);
  take("q_grid", c.q_grid);
  take("resolution", c.resolution);
  take("verify_samples", c.verify_samples);
  take("threads", c.threads);
  take("map", c.map);
  take("diagnose", c.diagnose);
  take("n_burn", c.n_burn);
  take("n_window", c.n_window);
  if (!c.operator_spec && j.contains("operator")) c.operator_spec = j.at("operator");
  if (!c.x0 && j.contains("x0")) {
    const json& x = j.at("x0");
    if (x.is_string()) {
      c.x0 = ParseNumberList(x.get<std::string>());
    } else {
      take("x0", c.x0);
    }
  }
}

int Run(RunConfig config, std::ostream& out, std::ostream& err) {
  try {
    if (config.config_path) ApplyConfigJson(ReadJsonFile(*config.config_path), config);
    std::ostringstream buffer;
    int code = kExitOk;
    std::optional<Error> failure;
    try {
      code = Dispatch(config, buffer, err);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoConvergence) throw;
      failure = e;
      code = kExitNoConvergence;
    }
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::kIo, "cannot open " + *config.output + " for writing");
      file << buffer.str();
      if (!file.flush()) throw Error(ErrorCode::kIo, "write to " + *config.output + " failed");
    } else {
      out << buffer.str();
    }
    if (failure) err << "error: " << failure->what() << '\n';
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  }
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = ParseArgs(argc, argv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  }
  if (!config) return kExitOk;
  return Run(std::move(*config), out, err);
}

}  // namespace qso
