#pragma once

#include <stdexcept>
#include <string>

namespace jetlie {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two different radical kernels met inside one expression.
class RadicalConflict : public Error {
 public:
  RadicalConflict(std::string first, std::string second)
      : Error("expression mixes two radical kernels: sqrt(" + first + ") and sqrt(" + second + ")"),
        first_(std::move(first)),
        second_(std::move(second)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Evaluation hit a symbol with no value, or a radicand outside the exact domain.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A jet coordinate beyond the configured order cap was requested.
class OrderCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Input outside the class an operation handles (non-affine flow, non-integer spectrum, ...).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A system handed to the linear solver is not linear and homogeneous in its unknowns.
class NonlinearSystem : public Error {
 public:
  using Error::Error;
};

/// Bracket closure failure (structure tables, subalgebra checks).
class ClosureError : public Error {
 public:
  using Error::Error;
};

/// A transformation that was expected to be a symmetry is not.
class NotASymmetry : public Error {
 public:
  using Error::Error;
};

}  // namespace jetlie
