#include "qso/engines.h"

#include <cmath>
#include <limits>
#include <mutex>

#include <boost/multiprecision/mpfr.hpp>

#include "qso/error.h"
#include "qso/operators.h"
#include "qso/symmetric_map.h"

namespace qso {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::array<double, 5> ToArray(const SimplexPoint& x) {
  if (x.dim() != 5) throw Error(ErrorCode::kDimMismatch, "expected a point of S^4");
  return {x[0], x[1], x[2], x[3], x[4]};
}

class DoubleEngine : public OrbitEngine {
 public:
  DoubleEngine(double p, const SimplexPoint& x0) : p_(p), x_(ToArray(x0)) {
    phi_ = Product();
    stats_.min_log_phi = std::log(phi_);
  }

  void Advance(std::int64_t n) override {
    for (std::int64_t i = 0; i < n; ++i) {
      x_ = SymmetricWStep(x_, p_);
      const double s = x_[0] + x_[1] + x_[2] + x_[3] + x_[4];
      for (double& v : x_) v /= s;
      const double phi = Product();
      if (phi > phi_ * (1 + kPhiSlack)) ++stats_.phi_increase_violations;
      phi_ = phi;
      stats_.min_log_phi = std::min(stats_.min_log_phi, std::log(phi));
    }
    stats_.steps += n;
  }

  std::array<double, 5> Coords() const override { return x_; }
  const OrbitStats& stats() const override { return stats_; }
  std::string_view name() const override { return "double"; }

 private:
  double Product() const { return x_[0] * x_[1] * x_[2] * x_[3] * x_[4]; }

  double p_;
  std::array<double, 5> x_;
  double phi_;
  OrbitStats stats_;
};

// Each bracket 1 + p sum_i s_i x_i equals (1 - |p|) + |p| sum_i (1 + sign(p) s_i) x_i
// on the simplex. The weights 1 + sign(p) s_i lie in {0, 1, 2}, so the sum has
// no cancellation and its logarithm is accurate even when the bracket is tiny.
class LogEngine : public OrbitEngine {
 public:
  LogEngine(double p, const SimplexPoint& x0) : abs_p_(std::abs(p)) {
    const double sigma = p >= 0 ? 1.0 : -1.0;
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) weight_[k][i] = 1.0 + sigma * kBracketSigns[k][i];
    const std::array<double, 5> x = ToArray(x0);
    for (int i = 0; i < 5; ++i) {
      x_[i] = x[i];
      l_[i] = x[i] > 0 ? std::log(x[i]) : kNegInf;
    }
    log_phi_ = LogPhi();
    stats_.min_log_phi = log_phi_;
  }

  void Advance(std::int64_t n) override {
    for (std::int64_t i = 0; i < n; ++i) Step();
    stats_.steps += n;
  }

  std::array<double, 5> Coords() const override { return x_; }
  const OrbitStats& stats() const override { return stats_; }
  std::string_view name() const override { return "log"; }

 private:
  double LogPhi() const { return l_[0] + l_[1] + l_[2] + l_[3] + l_[4]; }

  double LogBracket(int k) const {
    double lin = 0.0;
    for (int i = 0; i < 5; ++i) lin += weight_[k][i] * x_[i];
    const double b = (1 - abs_p_) + abs_p_ * lin;
    if (b > 1e-280) return std::log(b);
    // Only reachable at |p| = 1: every weighted coordinate is tiny.
    double m = kNegInf;
    for (int i = 0; i < 5; ++i)
      if (weight_[k][i] > 0) m = std::max(m, l_[i] + std::log(weight_[k][i]));
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
      if (weight_[k][i] > 0) s += std::exp(l_[i] + std::log(weight_[k][i]) - m);
    return std::log(abs_p_) + m + std::log(s);
  }

  void Step() {
    std::array<double, 5> next;
    for (int k = 0; k < 5; ++k) next[k] = l_[(k + 4) % 5] + LogBracket(k);
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
      x_[k] = std::exp(next[k]);
      s += x_[k];
    }
    const double ls = std::log(s);
    for (int k = 0; k < 5; ++k) {
      l_[k] = next[k] - ls;
      x_[k] /= s;
    }
    const double log_phi = LogPhi();
    if (log_phi > log_phi_ + kPhiSlack) ++stats_.phi_increase_violations;
    log_phi_ = log_phi;
    stats_.min_log_phi = std::min(stats_.min_log_phi, log_phi);
  }

  double abs_p_;
  double weight_[5][5];
  std::array<double, 5> l_;
  std::array<double, 5> x_;
  double log_phi_;
  OrbitStats stats_;
};

using Real = boost::multiprecision::mpfr_float;

std::mutex& PrecisionMutex() {
  static std::mutex m;
  return m;
}

class MultiprecisionEngine : public OrbitEngine {
 public:
  MultiprecisionEngine(double p, const ExactStart& start, unsigned bits)
      : lock_(PrecisionMutex()), saved_digits_(Real::default_precision()) {
    Real::default_precision(boost::multiprecision::detail::digits2_2_10(bits));
    p_ = Real(p);
    std::array<Real, 5> y;
    for (auto& v : y) v = 0;
    const Real third = Real(1) / 3;
    switch (start.kind) {
      case ExactStart::Kind::kBarycenter:
        for (auto& v : y) v = Real(1) / 5;
        break;
      case ExactStart::Kind::kVertex:
        y[0] = 1;
        break;
      case ExactStart::Kind::kOneThird:
        y[0] = y[1] = y[2] = third;
        break;
      case ExactStart::Kind::kSegment:
        y[0] = Real(start.u);
        y[1] = y[2] = third;
        y[3] = third - y[0];
        break;
    }
    const int r = ((start.rotation % 5) + 5) % 5;
    for (int i = 0; i < 5; ++i) x_[(i + r) % 5] = y[i];
    phi_ = Product();
    min_phi_ = phi_;
    stats_.min_log_phi = LogOf(min_phi_);
  }

  ~MultiprecisionEngine() override { Real::default_precision(saved_digits_); }

  void Advance(std::int64_t n) override {
    const Real slack = 1 + Real(kPhiSlack);
    for (std::int64_t i = 0; i < n; ++i) {
      x_ = SymmetricWStep(x_, p_);
      const Real s = x_[0] + x_[1] + x_[2] + x_[3] + x_[4];
      for (auto& v : x_) v /= s;
      const Real phi = Product();
      if (phi > phi_ * slack) ++stats_.phi_increase_violations;
      phi_ = phi;
      if (phi < min_phi_) min_phi_ = phi;
    }
    stats_.steps += n;
    stats_.min_log_phi = LogOf(min_phi_);
  }

  std::array<double, 5> Coords() const override {
    std::array<double, 5> out;
    for (int i = 0; i < 5; ++i) out[i] = x_[i].convert_to<double>();
    return out;
  }
  const OrbitStats& stats() const override { return stats_; }
  std::string_view name() const override { return "mpfr"; }

 private:
  Real Product() const { return x_[0] * x_[1] * x_[2] * x_[3] * x_[4]; }
  static double LogOf(const Real& v) { return v > 0 ? log(v).convert_to<double>() : kNegInf; }

  std::lock_guard<std::mutex> lock_;
  unsigned saved_digits_;
  Real p_;
  std::array<Real, 5> x_;
  Real phi_;
  Real min_phi_;
  OrbitStats stats_;
};

}  // namespace

std::unique_ptr<OrbitEngine> MakeDoubleEngine(double p, const SimplexPoint& x0) {
  return std::make_unique<DoubleEngine>(SymmetricParam(p).p(), x0);
}

std::unique_ptr<OrbitEngine> MakeLogEngine(double p, const SimplexPoint& x0) {
  return std::make_unique<LogEngine>(SymmetricParam(p).p(), x0);
}

unsigned MultiprecisionBits(double p, std::int64_t steps) {
  return 96 + static_cast<unsigned>(std::ceil(0.25 * std::abs(p) * static_cast<double>(steps)));
}

std::unique_ptr<OrbitEngine> MakeMultiprecisionEngine(double p, const ExactStart& start, unsigned bits) {
  if (start.kind == ExactStart::Kind::kSegment && !(start.u >= 0 && start.u <= 1.0 / 3.0)) {
    throw Error(ErrorCode::kInvalidArgument, "segment parameter outside [0, 1/3]");
  }
  return std::make_unique<MultiprecisionEngine>(SymmetricParam(p).p(), start, bits);
}

}  // namespace qso
