#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapdesign {

enum class ErrorCode {
  InvalidArgument,
  EmptyMask,
  DimensionMismatch,
  DegeneratePage,
  InvalidThreshold,
  ZeroDenominator,
  ConstantInput,
  InsufficientYears,
  EmptyGroup,
  ImageDecodeError,
  FileNotFound,
  SchemaViolation,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every recoverable failure in the library is reported through this type;
// callers branch on code() rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mapdesign
