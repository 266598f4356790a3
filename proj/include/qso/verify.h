#ifndef QSO_VERIFY_H_
#define QSO_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace qso {

struct InvariantResult {
  std::string name;
  bool passed = false;
  double measured = 0;  // worst observed value of the checked quantity
  double tolerance = 0;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20240521;

// Runs every registered invariant with randomness drawn from `seed`.
std::vector<InvariantResult> VerifyAll(std::uint64_t seed = kDefaultVerifySeed);

std::vector<std::string> InvariantNames();

}  // namespace qso

#endif  // QSO_VERIFY_H_
