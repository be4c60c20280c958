#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmorita {

enum class ErrorCode {
  ScalarKindMismatch,
  DivisionByZero,
  ShapeMismatch,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotClosed,
  NotCrossedProduct,
  NotGInvariant,
  NotSurjective,
  ActionLeavesCentralizer,
  PreconditionViolation,
  WitnessNotIso,
  OverCViolation,
  KindMismatch,
  ParseError,
  UnknownKey,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ScalarKindMismatch: return "ScalarKindMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotCrossedProduct: return "NotCrossedProduct";
    case ErrorCode::NotGInvariant: return "NotGInvariant";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::ActionLeavesCentralizer: return "ActionLeavesCentralizer";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::WitnessNotIso: return "WitnessNotIso";
    case ErrorCode::OverCViolation: return "OverCViolation";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmorita
