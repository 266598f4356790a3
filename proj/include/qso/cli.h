#ifndef QSO_CLI_H_
#define QSO_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace qso {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitIo = 4;

// One invocation. Unset optionals fall back to the --config file, then to
// the per-command defaults.
struct RunConfig {
  std::string command;  // iterate classify basin spectrum periodic edge face verify
  std::optional<std::string> config_path;

  std::optional<double> p;
  std::optional<std::string> variant;   // W or V
  std::optional<nlohmann::json> operator_spec;  // see ParseOperator
  std::optional<std::vector<double>> x0;
  std::optional<std::int64_t> n;
  std::optional<int> thin;
  std::optional<std::string> output;
  std::optional<std::string> format;  // json or csv
  std::optional<std::uint64_t> seed;

  std::optional<std::string> q_grid;  // a:b:step
  std::optional<int> resolution;
  std::optional<int> verify_samples;
  std::optional<int> threads;
  std::optional<std::string> map;  // edge: F or G; face: hatv or segment
  std::optional<bool> diagnose;
  std::optional<std::int64_t> n_burn;
  std::optional<int> n_window;
};

// Parses argv. Returns nullopt after printing help; throws Error(kInvalidArgument)
// on malformed arguments.
std::optional<RunConfig> ParseArgs(int argc, const char* const* argv, std::ostream& out);

// Fills fields left unset on the command line from a JSON object whose keys
// match the long flag names with '-' replaced by '_'.
void ApplyConfigJson(const nlohmann::json& j, RunConfig& config);

// Executes the command, writing artifacts to `out` (or config.output) and
// diagnostics to `err`. Returns one of the exit codes above.
int Run(RunConfig config, std::ostream& out, std::ostream& err);

// ParseArgs + Run with error mapping; the body of main().
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qso

#endif  // QSO_CLI_H_
