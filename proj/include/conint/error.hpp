#pragma once

#include <stdexcept>
#include <string>

namespace conint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input requests something the library deliberately does not implement
/// (for example d-type basis functions).
class UnsupportedFeature : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised by iterative solvers that run out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_value, int iterations)
      : Error(what), last_value_(last_value), iterations_(iterations) {}

  double last_value() const noexcept { return last_value_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_value_;
  int iterations_;
};

/// Malformed text input.  `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An operator does not have the structure an algorithm relies on.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace conint
