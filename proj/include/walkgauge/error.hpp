#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walkgauge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (edge list, graph6, grid spec).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : what + " at line " + std::to_string(line)),
        line_(line) {}

  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A precondition on arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The eigensolver hit its sweep cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold mathematically did not. Either an arithmetic
/// bug or a precision failure; never to be swallowed.
class DiagnosticFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace walkgauge
