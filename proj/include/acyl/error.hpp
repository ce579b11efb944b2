#pragma once

#include <stdexcept>
#include <string>

namespace acyl {

enum class ErrorCode {
  kInvalidArgument = 1,
  kUnknownVertex = 2,
  kParse = 3,
  kIo = 4,
  kPrecondition = 5,
  kBudgetExhausted = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acyl
