#include "mapdesign/error.hpp"

namespace mapdesign {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegeneratePage: return "DegeneratePage";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::InsufficientYears: return "InsufficientYears";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::ImageDecodeError: return "ImageDecodeError";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mapdesign
