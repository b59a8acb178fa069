#include "entwined/error.hpp"

namespace entwined {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::NotHermitian: return "NotHermitian";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NonCommuting: return "NonCommuting";
  case ErrorKind::BadParameter: return "BadParameter";
  case ErrorKind::NotClosed: return "NotClosed";
  case ErrorKind::WrongNormalization: return "WrongNormalization";
  case ErrorKind::JacobiViolation: return "JacobiViolation";
  case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
  case ErrorKind::UnknownIrrep: return "UnknownIrrep";
  case ErrorKind::CommutantFailure: return "CommutantFailure";
  case ErrorKind::NotNormalized: return "NotNormalized";
  case ErrorKind::LengthMismatch: return "LengthMismatch";
  case ErrorKind::SchemaError: return "SchemaError";
  case ErrorKind::ValidationError: return "ValidationError";
  case ErrorKind::UnknownAlgebra: return "UnknownAlgebra";
  case ErrorKind::UnknownName: return "UnknownName";
  case ErrorKind::UnknownSession: return "UnknownSession";
  case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

} // namespace entwined
