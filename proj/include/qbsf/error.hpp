#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qbsf {

enum class ErrorCode {
  UnboundSymbol,
  ArityMismatch,
  InconsistentArity,
  LimitExceeded,
  InvalidPath,
  CaptureDetected,
  SyntaxError,
  UndeclaredVariable,
  HeaderMismatch,
  NotPrenex,
  NotSplittable,
  NotCNF,
  NotPropositionalPrefix,
  WidthTooSmall,
  ArityShrink,
  QuantifierTypeMismatch,
  NotAdjacent,
  ShapeMismatch,
  NotClosed,
  Timeout,
  InvalidIndex,
  WindowOverflow,
  InvalidMachine,
  OutOfRange,
  StateSpaceExceeded,
  WidthMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::SyntaxError, what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace qbsf
