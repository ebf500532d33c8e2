#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conflab {

enum class ErrorCode {
  Aliasing,
  UnsupportedBackend,
  UnsupportedDimension,
  NonpositiveFactor,
  Kernel,
  CutoffTooLow,
  HypothesisFail,
  ZeroFunction,
  ConfigInvalid,
  BackendBuildFail,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Aliasing: return "ALIASING";
    case ErrorCode::UnsupportedBackend: return "UNSUPPORTED_BACKEND";
    case ErrorCode::UnsupportedDimension: return "UNSUPPORTED_DIMENSION";
    case ErrorCode::NonpositiveFactor: return "NONPOSITIVE_FACTOR";
    case ErrorCode::Kernel: return "KERNEL";
    case ErrorCode::CutoffTooLow: return "CUTOFF_TOO_LOW";
    case ErrorCode::HypothesisFail: return "HYPOTHESIS_FAIL";
    case ErrorCode::ZeroFunction: return "ZERO_FUNCTION";
    case ErrorCode::ConfigInvalid: return "CONFIG_INVALID";
    case ErrorCode::BackendBuildFail: return "BACKEND_BUILD_FAIL";
  }
  return "UNKNOWN";
}

class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conflab
