#include "qso/operators.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qso/error.h"
#include "qso/symmetric_map.h"

namespace qso {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireDim(int expected, Eigen::Index actual) {
  if (expected != actual) {
    std::ostringstream msg;
    msg << "operator acts on dimension " << expected << ", got " << actual;
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
}

Eigen::VectorXd ApplyTensor(const HeredityTensor& t, const Eigen::VectorXd& x) {
  const int m = t.dim();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double w = x[i] * x[j];
      if (w == 0.0) continue;
      for (int k = 0; k < m; ++k) y[k] += t(i, j, k) * w;
    }
  }
  return y;
}

Eigen::MatrixXd TensorJacobian(const HeredityTensor& t, const Eigen::VectorXd& x) {
  const int m = t.dim();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += (t(l, j, k) + t(j, l, k)) * x[j];
      jac(k, l) = s;
    }
  }
  return jac;
}

// y_k = x_k (1 + sum_i a_ki x_i), then y is permuted.
Eigen::VectorXd ApplyPermutedVolterra(const Eigen::MatrixXd& a, const Permutation& perm,
                                      const Eigen::VectorXd& x) {
  const Eigen::VectorXd growth = Eigen::VectorXd::Ones(x.size()) + a * x;
  return perm.Apply(x.cwiseProduct(growth));
}

Eigen::MatrixXd PermutedVolterraJacobian(const Eigen::MatrixXd& a, const Permutation& perm,
                                         const Eigen::VectorXd& x) {
  const Eigen::Index m = x.size();
  const Eigen::VectorXd growth = Eigen::VectorXd::Ones(m) + a * x;
  Eigen::MatrixXd volterra = x.asDiagonal() * a;
  volterra.diagonal() += growth;
  Eigen::MatrixXd jac(m, m);
  for (Eigen::Index k = 0; k < m; ++k) jac.row(perm[static_cast<int>(k)]) = volterra.row(k);
  return jac;
}

// Volterra tensor: P_{ik,k} = (1 + a_ki) / 2 for i != k and P_{kk,k} = 1,
// with the output index relabelled by `perm`.
HeredityTensor VolterraTensor(const Eigen::MatrixXd& a, const Permutation& perm) {
  const int m = static_cast<int>(a.rows());
  std::vector<double> data(static_cast<size_t>(m) * m * m, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return data[(i * m + j) * m + perm[k]]; };
  for (int i = 0; i < m; ++i) {
    at(i, i, i) = 1.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      at(i, j, i) = 0.5 * (1.0 + a(i, j));
      at(i, j, j) = 0.5 * (1.0 + a(j, i));
    }
  }
  return HeredityTensor::Make(m, std::move(data));
}

Eigen::VectorXd CfepWClosedForm(const CfepParams& params, const Eigen::VectorXd& x) {
  const CfepParams::Signed s = params.ToSigned();
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
  Eigen::VectorXd y(5);
  y[0] = x5 * (1 + s.D * x1 + s.G * x2 + s.I * x3 + s.J * x4);
  y[1] = x1 * (1 + s.A * x2 + s.B * x3 + s.C * x4 - s.D * x5);
  y[2] = x2 * (1 - s.A * x1 + s.E * x3 + s.F * x4 - s.G * x5);
  y[3] = x3 * (1 - s.B * x1 - s.E * x2 + s.H * x4 - s.I * x5);
  y[4] = x4 * (1 - s.C * x1 - s.F * x2 - s.H * x3 - s.J * x5);
  return y;
}

Eigen::VectorXd CfepVClosedForm(const CfepParams& params, const Eigen::VectorXd& x) {
  const CfepParams::Signed s = params.ToSigned();
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
  Eigen::VectorXd y(5);
  y[0] = x1 * (1 + s.A * x2 + s.B * x3 + s.C * x4 - s.D * x5);
  y[1] = x2 * (1 - s.A * x1 + s.E * x3 + s.F * x4 - s.G * x5);
  y[2] = x3 * (1 - s.B * x1 - s.E * x2 + s.H * x4 - s.I * x5);
  y[3] = x4 * (1 - s.C * x1 - s.F * x2 - s.H * x3 - s.J * x5);
  y[4] = x5 * (1 + s.D * x1 + s.G * x2 + s.I * x3 + s.J * x4);
  return y;
}

std::array<double, 5> ToArray5(const Eigen::VectorXd& x) {
  return {x[0], x[1], x[2], x[3], x[4]};
}

Eigen::VectorXd FromArray5(const std::array<double, 5>& a) {
  return Eigen::Map<const Eigen::VectorXd>(a.data(), 5);
}

}  // namespace

HeredityTensor HeredityTensor::Make(int m, std::vector<double> data) {
  if (m < 2 || data.size() != static_cast<size_t>(m) * m * m) {
    throw Error(ErrorCode::kDimMismatch, "heredity tensor needs m*m*m entries with m >= 2");
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double row = 0.0;
      for (int k = 0; k < m; ++k) {
        const double v = data[(i * m + j) * m + k];
        if (!(v >= -kSimplexTolerance)) {
          throw Error(ErrorCode::kParamRange, "heredity coefficient is negative");
        }
        row += v;
      }
      if (std::abs(row - 1.0) > kSimplexTolerance) {
        std::ostringstream msg;
        msg << "coefficients P_{" << i + 1 << j + 1 << ",k} sum to " << row;
        throw Error(ErrorCode::kParamRange, msg.str());
      }
    }
  }
  return HeredityTensor(m, std::move(data));
}

bool HeredityTensor::IsSymmetric(double tol) const {
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        if (std::abs((*this)(i, j, k) - (*this)(j, i, k)) > tol) return false;
  return true;
}

bool HeredityTensor::IsVolterra(double tol) const {
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        if (k != i && k != j && std::abs((*this)(i, j, k)) > tol) return false;
  return true;
}

SkewMatrix SkewMatrix::Make(Eigen::MatrixXd a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw Error(ErrorCode::kDimMismatch, "skew matrix must be square with m >= 2");
  }
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (a(k, k) != 0.0) throw Error(ErrorCode::kNotSkew, "diagonal entry is nonzero");
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      if (std::abs(a(k, i) + a(i, k)) > kSimplexTolerance) {
        throw Error(ErrorCode::kNotSkew, "matrix is not skew-symmetric");
      }
      if (std::abs(a(k, i)) > 1.0 + kSimplexTolerance) {
        throw Error(ErrorCode::kNotSkew, "entry exceeds 1 in absolute value");
      }
    }
  }
  return SkewMatrix(std::move(a));
}

Permutation Permutation::Make(std::vector<int> image) {
  std::vector<int> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || v >= static_cast<int>(image.size()) || seen[v]++) {
      throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    }
  }
  return Permutation(std::move(image));
}

Permutation Permutation::Identity(int m) {
  std::vector<int> image(m);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation Permutation::CyclicShift(int m, int k) {
  std::vector<int> image(m);
  for (int i = 0; i < m; ++i) image[i] = ((i + k) % m + m) % m;
  return Permutation(std::move(image));
}

Eigen::VectorXd Permutation::Apply(const Eigen::VectorXd& x) const {
  RequireDim(dim(), x.size());
  Eigen::VectorXd y(x.size());
  for (int i = 0; i < dim(); ++i) y[image_[i]] = x[i];
  return y;
}

Permutation Permutation::Inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < dim(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

CfepParams::Signed CfepParams::ToSigned() const {
  return {2 * a - 1,     2 * b - 1,    2 * c - 1,     2 * d - 1,     2 * alpha - 1,
          2 * beta - 1,  2 * gamma - 1, 2 * delta - 1, 2 * theta - 1, 2 * omega - 1};
}

CfepParams CfepParams::FromSigned(const Signed& s) {
  auto u = [](double v) { return 0.5 * (1.0 + v); };
  CfepParams c;
  c.a = u(s.A);
  c.b = u(s.B);
  c.c = u(s.C);
  c.d = u(s.D);
  c.alpha = u(s.E);
  c.beta = u(s.F);
  c.gamma = u(s.G);
  c.delta = u(s.H);
  c.theta = u(s.I);
  c.omega = u(s.J);
  c.Validate();
  return c;
}

void CfepParams::Validate() const {
  const double values[] = {a, b, c, d, alpha, beta, gamma, delta, theta, omega};
  const char* names[] = {"a", "b", "c", "d", "alpha", "beta", "gamma", "delta", "theta", "omega"};
  for (int i = 0; i < 10; ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "parameter " << names[i] << " = " << values[i] << " outside [0, 1]";
      throw Error(ErrorCode::kParamRange, msg.str());
    }
  }
}

SymmetricParam::SymmetricParam(double p) : p_(p) {
  if (!(std::abs(p) <= 1.0)) {
    std::ostringstream msg;
    msg << "p = " << p << " outside [-1, 1]";
    throw Error(ErrorCode::kParamRange, msg.str());
  }
}

CfepParams SymmetricCfepParams(const SymmetricParam& sp) {
  const double p = sp.p();
  return CfepParams::FromSigned({p, -p, p, p, p, -p, -p, p, p, -p});
}

HeredityTensor CfepHeredityTensor(const CfepParams& params) {
  params.Validate();
  constexpr int m = 5;
  std::vector<double> data(m * m * m, 0.0);
  // Entries are given for i <= j (1-based) and mirrored.
  auto set = [&](int i, int j, int k, double v) {
    data[((i - 1) * m + (j - 1)) * m + (k - 1)] = v;
    data[((j - 1) * m + (i - 1)) * m + (k - 1)] = v;
  };
  // Generating cycle.
  set(1, 1, 2, 1.0);
  set(2, 2, 3, 1.0);
  set(3, 3, 4, 1.0);
  set(4, 4, 5, 1.0);
  set(5, 5, 1, 1.0);
  const CfepParams& c = params;
  set(1, 2, 2, c.a);      set(1, 2, 3, 1 - c.a);
  set(1, 3, 2, c.b);      set(1, 3, 4, 1 - c.b);
  set(1, 4, 2, c.c);      set(1, 4, 5, 1 - c.c);
  set(1, 5, 1, c.d);      set(1, 5, 2, 1 - c.d);
  set(2, 3, 3, c.alpha);  set(2, 3, 4, 1 - c.alpha);
  set(2, 4, 3, c.beta);   set(2, 4, 5, 1 - c.beta);
  set(2, 5, 1, c.gamma);  set(2, 5, 3, 1 - c.gamma);
  set(3, 4, 4, c.delta);  set(3, 4, 5, 1 - c.delta);
  set(3, 5, 1, c.theta);  set(3, 5, 4, 1 - c.theta);
  set(4, 5, 1, c.omega);  set(4, 5, 5, 1 - c.omega);
  return HeredityTensor::Make(m, std::move(data));
}

SkewMatrix CfepSkewMatrix(const CfepParams& params) {
  params.Validate();
  const CfepParams::Signed s = params.ToSigned();
  Eigen::MatrixXd a(5, 5);
  // clang-format off
  a <<     0,  s.A,  s.B,  s.C, -s.D,
        -s.A,    0,  s.E,  s.F, -s.G,
        -s.B, -s.E,    0,  s.H, -s.I,
        -s.C, -s.F, -s.H,    0, -s.J,
         s.D,  s.G,  s.I,  s.J,    0;
  // clang-format on
  return SkewMatrix::Make(std::move(a));
}

std::string_view OperatorKindName(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kGeneralQso: return "general_qso";
    case OperatorKind::kVolterra: return "volterra";
    case OperatorKind::kPermutedVolterra: return "permuted_volterra";
    case OperatorKind::kCfepW: return "cfep_w";
    case OperatorKind::kCfepV: return "cfep_v";
    case OperatorKind::kSymmetricW: return "symmetric_w";
    case OperatorKind::kSymmetricV: return "symmetric_v";
    case OperatorKind::kPermutation: return "permutation";
  }
  return "unknown";
}

Operator Operator::GeneralQso(HeredityTensor tensor) { return Operator(GeneralQsoImpl{std::move(tensor)}); }

Operator Operator::Volterra(SkewMatrix a) {
  const int m = a.dim();
  return Operator(PermutedVolterraImpl{std::move(a), qso::Permutation::Identity(m), OperatorKind::kVolterra});
}

Operator Operator::PermutedVolterra(SkewMatrix a, qso::Permutation perm) {
  RequireDim(a.dim(), perm.dim());
  return Operator(PermutedVolterraImpl{std::move(a), std::move(perm), OperatorKind::kPermutedVolterra});
}

Operator Operator::CfepW(const CfepParams& params) {
  params.Validate();
  return Operator(CfepImpl{params, true});
}

Operator Operator::CfepV(const CfepParams& params) {
  params.Validate();
  return Operator(CfepImpl{params, false});
}

Operator Operator::SymmetricW(const SymmetricParam& p) { return Operator(SymmetricImpl{p, true}); }

Operator Operator::SymmetricV(const SymmetricParam& p) { return Operator(SymmetricImpl{p, false}); }

Operator Operator::Permute(qso::Permutation perm) { return Operator(PermutationImpl{std::move(perm)}); }

OperatorKind Operator::kind() const {
  return std::visit(
      Overloaded{
          [](const GeneralQsoImpl&) { return OperatorKind::kGeneralQso; },
          [](const PermutedVolterraImpl& v) { return v.kind; },
          [](const CfepImpl& c) { return c.permuted ? OperatorKind::kCfepW : OperatorKind::kCfepV; },
          [](const SymmetricImpl& s) {
            return s.permuted ? OperatorKind::kSymmetricW : OperatorKind::kSymmetricV;
          },
          [](const PermutationImpl&) { return OperatorKind::kPermutation; },
      },
      impl_);
}

int Operator::dim() const {
  return std::visit(Overloaded{
                        [](const GeneralQsoImpl& g) { return g.tensor.dim(); },
                        [](const PermutedVolterraImpl& v) { return v.a.dim(); },
                        [](const CfepImpl&) { return 5; },
                        [](const SymmetricImpl&) { return 5; },
                        [](const PermutationImpl& p) { return p.perm.dim(); },
                    },
                    impl_);
}

Eigen::VectorXd Operator::ApplyRaw(const Eigen::VectorXd& x) const {
  RequireDim(dim(), x.size());
  return std::visit(
      Overloaded{
          [&](const GeneralQsoImpl& g) { return ApplyTensor(g.tensor, x); },
          [&](const PermutedVolterraImpl& v) { return ApplyPermutedVolterra(v.a.matrix(), v.perm, x); },
          [&](const CfepImpl& c) {
            return c.permuted ? CfepWClosedForm(c.params, x) : CfepVClosedForm(c.params, x);
          },
          [&](const SymmetricImpl& s) {
            const auto a = ToArray5(x);
            return FromArray5(s.permuted ? SymmetricWStep(a, s.p.p()) : SymmetricVStep(a, s.p.p()));
          },
          [&](const PermutationImpl& p) { return p.perm.Apply(x); },
      },
      impl_);
}

SimplexPoint Operator::Apply(const SimplexPoint& x) const {
  return SimplexPoint::Normalize(ApplyRaw(x.coords()));
}

Eigen::MatrixXd Operator::Jacobian(const Eigen::VectorXd& x) const {
  RequireDim(dim(), x.size());
  if (const auto* g = std::get_if<GeneralQsoImpl>(&impl_)) return TensorJacobian(g->tensor, x);
  if (const auto* p = std::get_if<PermutationImpl>(&impl_)) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) jac(p->perm[i], i) = 1.0;
    return jac;
  }
  return PermutedVolterraJacobian(Skew()->matrix(), *Perm(), x);
}

HeredityTensor Operator::Tensor() const {
  return std::visit(
      Overloaded{
          [](const GeneralQsoImpl& g) { return g.tensor; },
          [](const PermutedVolterraImpl& v) { return VolterraTensor(v.a.matrix(), v.perm); },
          [](const CfepImpl& c) {
            const HeredityTensor w = CfepHeredityTensor(c.params);
            if (c.permuted) return w;
            // V = T^{-1} o W: P^V_{ij,k} = P^W_{ij,k+1}.
            std::vector<double> data(w.data().size());
            for (int i = 0; i < 5; ++i)
              for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 5; ++k) data[(i * 5 + j) * 5 + k] = w(i, j, (k + 1) % 5);
            return HeredityTensor::Make(5, std::move(data));
          },
          [](const SymmetricImpl& s) {
            const CfepParams params = SymmetricCfepParams(s.p);
            return s.permuted ? Operator::CfepW(params).Tensor() : Operator::CfepV(params).Tensor();
          },
          [](const PermutationImpl& p) {
            return VolterraTensor(Eigen::MatrixXd::Zero(p.perm.dim(), p.perm.dim()), p.perm);
          },
      },
      impl_);
}

std::optional<SkewMatrix> Operator::Skew() const {
  return std::visit(
      Overloaded{
          [](const GeneralQsoImpl&) -> std::optional<SkewMatrix> { return std::nullopt; },
          [](const PermutedVolterraImpl& v) -> std::optional<SkewMatrix> { return v.a; },
          [](const CfepImpl& c) -> std::optional<SkewMatrix> { return CfepSkewMatrix(c.params); },
          [](const SymmetricImpl& s) -> std::optional<SkewMatrix> {
            return CfepSkewMatrix(SymmetricCfepParams(s.p));
          },
          [](const PermutationImpl& p) -> std::optional<SkewMatrix> {
            return SkewMatrix::Make(Eigen::MatrixXd::Zero(p.perm.dim(), p.perm.dim()));
          },
      },
      impl_);
}

std::optional<qso::Permutation> Operator::Perm() const {
  return std::visit(
      Overloaded{
          [](const GeneralQsoImpl&) -> std::optional<qso::Permutation> { return std::nullopt; },
          [](const PermutedVolterraImpl& v) -> std::optional<qso::Permutation> { return v.perm; },
          [](const CfepImpl& c) -> std::optional<qso::Permutation> {
            return c.permuted ? qso::Permutation::CyclicShift(5) : qso::Permutation::Identity(5);
          },
          [](const SymmetricImpl& s) -> std::optional<qso::Permutation> {
            return s.permuted ? qso::Permutation::CyclicShift(5) : qso::Permutation::Identity(5);
          },
          [](const PermutationImpl& p) -> std::optional<qso::Permutation> { return p.perm; },
      },
      impl_);
}

SimplexPoint ApplyTpi(const SimplexPoint& x) { return ApplyTpiPower(x, 1); }

SimplexPoint ApplyTpiPower(const SimplexPoint& x, int k) {
  RequireDim(5, x.dim());
  return SimplexPoint::Normalize(Permutation::CyclicShift(5, k).Apply(x.coords()));
}

SimplexPoint ApplyGeneral(const HeredityTensor& tensor, const SimplexPoint& x) {
  RequireDim(tensor.dim(), x.dim());
  return SimplexPoint::Normalize(ApplyTensor(tensor, x.coords()));
}

SimplexPoint ApplyVolterra(const SkewMatrix& a, const SimplexPoint& x) {
  return Operator::Volterra(a).Apply(x);
}

SimplexPoint Power(const Operator& op, const SimplexPoint& x, int n) {
  SimplexPoint y = x;
  for (int i = 0; i < n; ++i) y = op.Apply(y);
  return y;
}

TrajectoryRecord Iterate(const Operator& op, const SimplexPoint& x0, std::int64_t n, int thin) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "iteration count must be non-negative");
  if (thin < 1) throw Error(ErrorCode::kInvalidArgument, "thinning stride must be positive");
  RequireDim(op.dim(), x0.dim());
  TrajectoryRecord record;
  record.thin = thin;
  SimplexPoint x = x0;
  for (std::int64_t step = 0;; ++step) {
    if (step % thin == 0 || step == n) {
      record.points.push_back(x);
      record.steps.push_back(step);
    }
    if (step == n) break;
    x = op.Apply(x);
  }
  return record;
}

}  // namespace qso
