#pragma once

#include <stdexcept>
#include <string>

namespace netgeo {

// Malformed graph input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A numerical routine could not produce a value (singular matrix, non-PD
// input, quadrature non-convergence, degenerate Monte Carlo estimate).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An explicit size cap was exceeded (e.g. brute-force isomorphism search).
class SizeBoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace netgeo
