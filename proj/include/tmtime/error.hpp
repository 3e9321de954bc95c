#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmtime {

enum class ErrorCode {
  Parse,
  MissingTransition,
  HaltingStateHasRule,
  AlphabetViolation,
  DuplicateRule,
  DistinctnessViolation,
  AlphabetMismatch,
  UnsupportedAlphabet,
  EmptyTuple,
  MalformedCode,
  SymbolNotInSigma,
  TimeOutOfRange,
  InvalidReplay,
  EmptyPart,
  EmptyCrs,
  BoundaryMismatch,
  BadOverride,
  PreconditionViolated,
  ResourceBudgetExceeded,
  MissingProvenance,
  WindowTooSmall,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library. `position` is meaningful for
// MalformedCode (bit offset) and Parse (line number); WindowTooSmall uses
// `found` / `needed`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  std::size_t position = 0;
  std::size_t found = 0;
  std::size_t needed = 0;

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::MissingTransition: return "MissingTransition";
    case ErrorCode::HaltingStateHasRule: return "HaltingStateHasRule";
    case ErrorCode::AlphabetViolation: return "AlphabetViolation";
    case ErrorCode::DuplicateRule: return "DuplicateRule";
    case ErrorCode::DistinctnessViolation: return "DistinctnessViolation";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::UnsupportedAlphabet: return "UnsupportedAlphabet";
    case ErrorCode::EmptyTuple: return "EmptyTuple";
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::SymbolNotInSigma: return "SymbolNotInSigma";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::InvalidReplay: return "InvalidReplay";
    case ErrorCode::EmptyPart: return "EmptyPart";
    case ErrorCode::EmptyCrs: return "EmptyCrs";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::BadOverride: return "BadOverride";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tmtime
