#pragma once

#include <stdexcept>
#include <string>

namespace wuq {

/// Error categories raised by the library. Certified negative outcomes
/// (a search that legitimately finds nothing at a finite truncation) are
/// returned as values, never thrown.
enum class ErrorCode {
  IndexOutOfRange,
  SupportOverflow,
  LengthMismatch,
  QuotientUnavailable,
  CapExceeded,
  NonPolyhedral,
  ZeroDenominator,
  SignCapExceeded,
  TailDescriptorMissing,
  NotInRange,
  InvalidModel,
  SceneIncomplete,
  EmptyWindow,
  PlanIncompatible,
  PreconditionViolated,
  TooFewIndices,
  EmptyF,
  SubsetCapExceeded,
  InsufficientVectors,
  TraceIncomplete,
  ParseError,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the category prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Raised by the text format readers; carries a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace wuq
