#include "pse/error.hpp"

namespace pse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptImage: return "CorruptImage";
    case ErrorCode::InvalidGranularity: return "InvalidGranularity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveQ: return "NonPositiveQ";
    case ErrorCode::NoPositivePrior: return "NoPositivePrior";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::ZeroDegreeNode: return "ZeroDegreeNode";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateGroundTruth: return "DegenerateGroundTruth";
    case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace pse
