#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isowrist {

enum class ErrorCode {
  NonSymmetric,
  EmptySet,
  NonUnitVector,
  NonUnitNormal,
  NonUnitDirection,
  IndexOutOfRange,
  BranchInconsistent,
  NoConvergence,
  ResidualTooLarge,
  LengthMismatch,
  WrongCardinality,
  ParallelAxes,
  UnknownSolution,
  BadDocument,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonUnitVector: return "NonUnitVector";
    case ErrorCode::NonUnitNormal: return "NonUnitNormal";
    case ErrorCode::NonUnitDirection: return "NonUnitDirection";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BranchInconsistent: return "BranchInconsistent";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WrongCardinality: return "WrongCardinality";
    case ErrorCode::ParallelAxes: return "ParallelAxes";
    case ErrorCode::UnknownSolution: return "UnknownSolution";
    case ErrorCode::BadDocument: return "BadDocument";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isowrist
