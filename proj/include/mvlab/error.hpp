#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvlab {

enum class ErrorKind {
  DegenerateInput,
  Unbounded,
  Empty,
  DimensionMismatch,
  DimensionLimit,
  ZeroVector,
  RangeViolation,
  EmptyOrFlat,
  BadArity,
  BadParams,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// that the CLI can serialize it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mvlab
