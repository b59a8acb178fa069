#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entwined {

/// Failure categories raised by the core library.
enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  NonCommuting,
  BadParameter,
  NotClosed,
  WrongNormalization,
  JacobiViolation,
  AlgebraMismatch,
  UnknownIrrep,
  CommutantFailure,
  NotNormalized,
  LengthMismatch,
  SchemaError,
  ValidationError,
  UnknownAlgebra,
  UnknownName,
  UnknownSession,
  Unsupported,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying an ErrorKind and, for document errors, the offending field path.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::string path = {})
      : std::runtime_error(message), kind_(kind), path_(std::move(path)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

private:
  ErrorKind kind_;
  std::string path_;
};

} // namespace entwined
