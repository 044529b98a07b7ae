#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or manifest text. Line and column are 1-based; a
/// line of 0 means the error came from a standalone expression.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Evaluation outside the domain of an expression (log of a non-positive
/// value, division by zero, non-finite results) or a point outside the chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates an invariant: dimension mismatch,
/// degenerate metric, singular frame and so on.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A least-squares design that does not determine its unknowns.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpv
