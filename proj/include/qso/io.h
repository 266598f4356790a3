#ifndef QSO_IO_H_
#define QSO_IO_H_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qso/operators.h"
#include "qso/simplex.h"

namespace qso {

inline constexpr int kSchemaVersion = 1;

// 17 significant digits.
std::string FormatDouble(double v);

// Operator definition:
//   {"kind": "symmetric", "p": 0.5, "variant": "W"}
//   {"kind": "cfep", "params": {"a": .., ..., "omega": ..}, "variant": "V"}
//   {"kind": "tensor", "dim": m, "data": [m*m*m numbers, row-major over (i, j, k)]}
//   {"kind": "volterra", "dim": m, "matrix": [m*m numbers, row-major],
//    "permutation": [0-based images]}
// "variant" defaults to "W". Throws Error(kInvalidArgument) on malformed input
// and the kind-specific validation errors otherwise.
Operator ParseOperator(const nlohmann::json& j);
nlohmann::json OperatorToJson(const Operator& op);
// Throws Error(kIo) when the file cannot be read or parsed.
nlohmann::json ReadJsonFile(const std::string& path);

// Comma-separated decimals, normalized via SimplexPoint::Make.
SimplexPoint ParsePoint(const std::string& text);
std::vector<double> ParseNumberList(const std::string& text);

nlohmann::json PointToJson(const SimplexPoint& x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void Row(const std::vector<double>& values);
  void Row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  size_t columns_;
};

}  // namespace qso

#endif  // QSO_IO_H_
