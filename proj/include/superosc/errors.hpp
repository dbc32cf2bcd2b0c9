#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superosc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based character offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

/// Expression parses but cannot be certified bandlimited, or has bad catalog parameters.
struct CompileError : Error {
  using Error::Error;
};

/// Overflow or invalid value while evaluating a function.
struct EvaluationError : Error {
  using Error::Error;
};

/// Quadrature, transform, or cross-validation failure.
struct NumericError : Error {
  using Error::Error;
};

/// A criterion or scan was asked to work on an inadmissible interval or anchor.
struct PreconditionError : Error {
  using Error::Error;
};

/// Function has no finite trigonometric-polynomial form.
struct RepresentationError : Error {
  using Error::Error;
};

}  // namespace superosc
