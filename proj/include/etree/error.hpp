#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etree {

/// Machine-readable failure categories, mirrored verbatim by the CLI's
/// `error[<code>]:` prefix on stderr.
enum class ErrorCode {
  InvalidSpace,
  NotDisjoint,
  ForeignWorld,
  UnknownComponent,
  NonAtomicHead,
  EmptyIndexList,
  NotDescending,
  IndexOutOfRange,
  DuplicateComponent,
  DependentLabel,
  NegativeRate,
  NegativeTime,
  ZeroCustomers,
  ModelTooLarge,
  SyntaxError,
  SchemaError,
  SemanticError,
  UsageError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::ForeignWorld: return "ForeignWorld";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::NonAtomicHead: return "NonAtomicHead";
    case ErrorCode::EmptyIndexList: return "EmptyIndexList";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::DependentLabel: return "DependentLabel";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::ZeroCustomers: return "ZeroCustomers";
    case ErrorCode::ModelTooLarge: return "ModelTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace etree
