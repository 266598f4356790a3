#ifndef QSO_OPERATORS_H_
#define QSO_OPERATORS_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "qso/simplex.h"

namespace qso {

// Cubic array of heredity coefficients P_{ij,k}; P_{ij,k} >= 0 and
// sum_k P_{ij,k} = 1 for every pair (i, j).
class HeredityTensor {
 public:
  // `data` is row-major over (i, j, k): entry (i * m + j) * m + k.
  static HeredityTensor Make(int m, std::vector<double> data);

  int dim() const { return m_; }
  double operator()(int i, int j, int k) const { return data_[(i * m_ + j) * m_ + k]; }
  const std::vector<double>& data() const { return data_; }

  bool IsSymmetric(double tol = kSimplexTolerance) const;
  // P_{ij,k} = 0 whenever k is neither i nor j.
  bool IsVolterra(double tol = kSimplexTolerance) const;

 private:
  HeredityTensor(int m, std::vector<double> data) : m_(m), data_(std::move(data)) {}

  int m_;
  std::vector<double> data_;
};

// a_ki = -a_ik, a_ii = 0, |a_ki| <= 1.
class SkewMatrix {
 public:
  static SkewMatrix Make(Eigen::MatrixXd a);

  int dim() const { return static_cast<int>(a_.rows()); }
  double operator()(int k, int i) const { return a_(k, i); }
  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  explicit SkewMatrix(Eigen::MatrixXd a) : a_(std::move(a)) {}

  Eigen::MatrixXd a_;
};

// Coordinate permutation acting as y[image[i]] = x[i].
class Permutation {
 public:
  static Permutation Make(std::vector<int> image);
  static Permutation Identity(int m);
  // T^k for the cyclic right shift T(x_1..x_m) = (x_m, x_1, ..., x_{m-1}).
  static Permutation CyclicShift(int m, int k = 1);

  int dim() const { return static_cast<int>(image_.size()); }
  int operator[](int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  Eigen::VectorXd Apply(const Eigen::VectorXd& x) const;
  Permutation Inverse() const;

 private:
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {}

  std::vector<int> image_;
};

// The ten interaction probabilities of the five-phase operator, each in [0, 1].
struct CfepParams {
  double a = 0.5, b = 0.5, c = 0.5, d = 0.5;
  double alpha = 0.5, beta = 0.5, gamma = 0.5, delta = 0.5, theta = 0.5, omega = 0.5;

  // Signed parameters 2t - 1 in [-1, 1], named A..J in the order
  // a, b, c, d, alpha, beta, gamma, delta, theta, omega.
  struct Signed {
    double A, B, C, D, E, F, G, H, I, J;
  };

  Signed ToSigned() const;
  static CfepParams FromSigned(const Signed& s);
  // Throws Error(kParamRange) when any parameter leaves [0, 1].
  void Validate() const;
};

class SymmetricParam {
 public:
  // Throws Error(kParamRange) unless |p| <= 1.
  explicit SymmetricParam(double p);

  double p() const { return p_; }
  double q() const { return p_ / 5.0; }

 private:
  double p_;
};

// The CfepParams whose signed values are (p, -p, p, p, p, -p, -p, p, p, -p).
CfepParams SymmetricCfepParams(const SymmetricParam& p);

// Heredity tensor of the five-phase operator W assembled from its interaction
// probability table.
HeredityTensor CfepHeredityTensor(const CfepParams& params);
// Skew-symmetric matrix of the Volterra factor V of W.
SkewMatrix CfepSkewMatrix(const CfepParams& params);

enum class OperatorKind {
  kGeneralQso,
  kVolterra,
  kPermutedVolterra,
  kCfepW,
  kCfepV,
  kSymmetricW,
  kSymmetricV,
  kPermutation,
};

std::string_view OperatorKindName(OperatorKind kind);

// A realized map from the simplex to itself.
class Operator {
 public:
  static Operator GeneralQso(HeredityTensor tensor);
  static Operator Volterra(SkewMatrix a);
  // x -> perm(V_a(x)).
  static Operator PermutedVolterra(SkewMatrix a, Permutation perm);
  static Operator CfepW(const CfepParams& params);
  static Operator CfepV(const CfepParams& params);
  static Operator SymmetricW(const SymmetricParam& p);
  static Operator SymmetricV(const SymmetricParam& p);
  static Operator Permute(qso::Permutation perm);

  OperatorKind kind() const;
  int dim() const;

  // Output before re-normalization. For a stochastic operator its sum equals
  // the input sum (squared, for the tensor form) up to round-off.
  Eigen::VectorXd ApplyRaw(const Eigen::VectorXd& x) const;
  SimplexPoint Apply(const SimplexPoint& x) const;

  // Analytic Jacobian of the quadratic form at x (x need not be normalized).
  Eigen::MatrixXd Jacobian(const Eigen::VectorXd& x) const;

  // Equivalent heredity tensor. For the five-phase kinds it is assembled
  // from the probability table rather than from the skew matrix.
  HeredityTensor Tensor() const;
  // Present for every permuted-Volterra kind (all kinds but kGeneralQso).
  std::optional<SkewMatrix> Skew() const;
  std::optional<qso::Permutation> Perm() const;

 private:
  struct GeneralQsoImpl { HeredityTensor tensor; };
  struct PermutedVolterraImpl { SkewMatrix a; qso::Permutation perm; OperatorKind kind; };
  struct CfepImpl { CfepParams params; bool permuted; };
  struct SymmetricImpl { SymmetricParam p; bool permuted; };
  struct PermutationImpl { qso::Permutation perm; };
  using Impl = std::variant<GeneralQsoImpl, PermutedVolterraImpl, CfepImpl, SymmetricImpl,
                            PermutationImpl>;

  explicit Operator(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

// Cyclic right shift T(x_1..x_5) = (x_5, x_1, x_2, x_3, x_4).
SimplexPoint ApplyTpi(const SimplexPoint& x);
SimplexPoint ApplyTpiPower(const SimplexPoint& x, int k);

SimplexPoint ApplyGeneral(const HeredityTensor& tensor, const SimplexPoint& x);
SimplexPoint ApplyVolterra(const SkewMatrix& a, const SimplexPoint& x);

// Applies `op` n times with re-normalization after every step.
SimplexPoint Power(const Operator& op, const SimplexPoint& x, int n);

struct TrajectoryRecord {
  std::vector<SimplexPoint> points;
  std::vector<std::int64_t> steps;  // iteration index of each kept point
  int thin = 1;
};

// x^(0), ..., x^(n), keeping every `thin`-th iterate; the final iterate is
// always kept.
TrajectoryRecord Iterate(const Operator& op, const SimplexPoint& x0, std::int64_t n, int thin = 1);

}  // namespace qso

#endif  // QSO_OPERATORS_H_
