#pragma once

#include <stdexcept>
#include <string>

namespace homflow {

enum class ErrorCode {
  InvalidArgument,
  MalformedFile,
  NonIncreasingPositions,
  InvalidGraph,
  EpsTooLarge,
  MassMismatch,
  InfeasibleSupply,
  NumericalBreakdown,
  InvalidCurve,
  InternalConsistency,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::NonIncreasingPositions: return "NonIncreasingPositions";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::InfeasibleSupply: return "InfeasibleSupply";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace homflow
