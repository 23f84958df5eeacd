#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace costlab {

/// Thrown when an operation's preconditions are violated (bad shapes,
/// out-of-range parameters, non-finite data).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by iterative solvers that exhaust their iteration budget.
/// Carries the residual norm at the point of failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Thrown when a model parameter collapses numerically (e.g. a noise
/// variance underflowing to zero).
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by file parsers; carries the 1-based line number of the offending
/// token. The message already names the line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace costlab
