#ifndef QSO_SYMMETRIC_MAP_H_
#define QSO_SYMMETRIC_MAP_H_

#include <array>

namespace qso {

// The one-parameter five-phase operator W written as
//   W(x)_k = x_{k-1} * (1 + p * sum_i kBracketSigns[k][i] * x_i)
// (indices mod 5). The five factors are the "brackets"; their product is
// the Lyapunov ratio psi and their arithmetic mean is exactly 1.
inline constexpr int kBracketSigns[5][5] = {
    {+1, -1, +1, -1, 0},
    {0, +1, -1, +1, -1},
    {-1, 0, +1, -1, +1},
    {+1, -1, 0, +1, -1},
    {-1, +1, -1, 0, +1},
};

template <typename Real>
std::array<Real, 5> SymmetricBrackets(const std::array<Real, 5>& x, const Real& p) {
  const Real& x1 = x[0];
  const Real& x2 = x[1];
  const Real& x3 = x[2];
  const Real& x4 = x[3];
  const Real& x5 = x[4];
  return {Real(1 + p * (x1 - x2 + x3 - x4)), Real(1 + p * (x2 - x3 + x4 - x5)),
          Real(1 - p * (x1 - x3 + x4 - x5)), Real(1 + p * (x1 - x2 + x4 - x5)),
          Real(1 - p * (x1 - x2 + x3 - x5))};
}

template <typename Real>
std::array<Real, 5> SymmetricWStep(const std::array<Real, 5>& x, const Real& p) {
  const std::array<Real, 5> b = SymmetricBrackets(x, p);
  return {Real(x[4] * b[0]), Real(x[0] * b[1]), Real(x[1] * b[2]), Real(x[2] * b[3]),
          Real(x[3] * b[4])};
}

// V = T^{-1} o W: the same brackets without the shift.
template <typename Real>
std::array<Real, 5> SymmetricVStep(const std::array<Real, 5>& x, const Real& p) {
  const std::array<Real, 5> w = SymmetricWStep(x, p);
  return {w[1], w[2], w[3], w[4], w[0]};
}

}  // namespace qso

#endif  // QSO_SYMMETRIC_MAP_H_
