#include "mvlab/error.hpp"

namespace mvlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionLimit: return "DimensionLimit";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::EmptyOrFlat: return "EmptyOrFlat";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace mvlab
