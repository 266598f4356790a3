#ifndef QSO_ERROR_H_
#define QSO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qso {

enum class ErrorCode {
  kReject,             // point violates simplex constraints
  kDimMismatch,
  kNotSkew,
  kParamRange,
  kNoConvergence,
  kNotFixedPoint,
  kNotPe2Solution,
  kPZero,              // classification requested for p == 0
  kResolutionTooHigh,
  kInvariantViolation,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qso

#endif  // QSO_ERROR_H_
