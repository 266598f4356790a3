#include "qso/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qso/error.h"

namespace qso {
namespace {

using nlohmann::json;

double Number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

std::vector<double> Numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing array field \"") + key + "\"");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw Error(ErrorCode::kInvalidArgument, std::string("non-numeric entry in ") + key);
    out.push_back(v.get<double>());
  }
  return out;
}

bool VariantIsW(const json& j) {
  const std::string v = j.value("variant", "W");
  if (v != "W" && v != "V") throw Error(ErrorCode::kInvalidArgument, "variant must be \"W\" or \"V\"");
  return v == "W";
}

constexpr const char* kCfepNames[10] = {"a", "b", "c", "d", "alpha", "beta", "gamma", "delta", "theta", "omega"};

double* CfepField(CfepParams& c, int i) {
  double* fields[10] = {&c.a, &c.b, &c.c, &c.d, &c.alpha, &c.beta, &c.gamma, &c.delta, &c.theta, &c.omega};
  return fields[i];
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Operator ParseOperator(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "operator definition needs a string \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "symmetric") {
    const SymmetricParam p(Number(j, "p"));
    return VariantIsW(j) ? Operator::SymmetricW(p) : Operator::SymmetricV(p);
  }
  if (kind == "cfep") {
    CfepParams params;
    if (j.contains("params")) {
      const json& pj = j.at("params");
      for (int i = 0; i < 10; ++i)
        if (pj.contains(kCfepNames[i])) *CfepField(params, i) = Number(pj, kCfepNames[i]);
    }
    return VariantIsW(j) ? Operator::CfepW(params) : Operator::CfepV(params);
  }
  if (kind == "tensor") {
    const int m = static_cast<int>(Number(j, "dim"));
    return Operator::GeneralQso(HeredityTensor::Make(m, Numbers(j, "data")));
  }
  if (kind == "volterra") {
    const int m = static_cast<int>(Number(j, "dim"));
    const std::vector<double> flat = Numbers(j, "matrix");
    if (m < 2 || flat.size() != static_cast<size_t>(m) * m) {
      throw Error(ErrorCode::kDimMismatch, "volterra matrix needs dim*dim entries");
    }
    Eigen::MatrixXd a(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) a(r, c) = flat[r * m + c];
    SkewMatrix skew = SkewMatrix::Make(a);
    if (!j.contains("permutation")) return Operator::Volterra(std::move(skew));
    std::vector<int> image;
    for (double v : Numbers(j, "permutation")) image.push_back(static_cast<int>(v));
    return Operator::PermutedVolterra(std::move(skew), Permutation::Make(std::move(image)));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown operator kind \"" + kind + "\"");
}

json OperatorToJson(const Operator& op) {
  json j;
  j["kind"] = std::string(OperatorKindName(op.kind()));
  j["dim"] = op.dim();
  return j;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, path + ": " + e.what());
  }
}

std::vector<double> ParseNumberList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "cannot parse number \"" + cell + "\"");
    }
    out.push_back(v);
  }
  return out;
}

SimplexPoint ParsePoint(const std::string& text) { return SimplexPoint::Make(ParseNumberList(text)); }

json PointToJson(const SimplexPoint& x) { return x.ToVector(); }

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  Row(header);
}

void CsvWriter::Row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(FormatDouble(v));
  Row(cells);
}

void CsvWriter::Row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error(ErrorCode::kInvalidArgument, "CSV row width differs from header");
  for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

}  // namespace qso
