#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace telegraph {

enum class ErrorCode {
  NonPositiveRate,
  AlphaOutOfRange,
  LambdaNotGreaterThanMu,
  NegativeStart,
  DomainBoundary,
  RegimeMismatch,
  BoundaryDivergence,
  NoConvergence,
  PrecisionLoss,
  DomainError,
  NoBracket,
  EventCapExceeded,
  MeanTooSmall,
  LowerEndpointUndefined,
  GridOutOfDomain,
  EmptySample,
  ZeroHits,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveRate: return "NonPositiveRate";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::LambdaNotGreaterThanMu: return "LambdaNotGreaterThanMu";
    case ErrorCode::NegativeStart: return "NegativeStart";
    case ErrorCode::DomainBoundary: return "DomainBoundary";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::BoundaryDivergence: return "BoundaryDivergence";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::EventCapExceeded: return "EventCapExceeded";
    case ErrorCode::MeanTooSmall: return "MeanTooSmall";
    case ErrorCode::LowerEndpointUndefined: return "LowerEndpointUndefined";
    case ErrorCode::GridOutOfDomain: return "GridOutOfDomain";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ZeroHits: return "ZeroHits";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code whose
/// name is stable and is what the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace telegraph
