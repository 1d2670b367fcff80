#ifndef CVINFER_ERRORS_HPP_
#define CVINFER_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cvinfer {

/// A caller broke a documented precondition (dimension mismatch, index out
/// of range, invalid option value).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed (SVD did not converge, degenerate scale).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A selection event turned out infeasible where it must not be; this
/// signals a bug in whoever assembled the event, not bad user input.
class InconsistentEvent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough residual degrees of freedom to estimate the noise scale.
class InsufficientDof : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries 1-based row/column location when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t row, std::size_t column)
      : std::runtime_error(message + " (row " + std::to_string(row) +
                           ", column " + std::to_string(column) + ")"),
        row_(row),
        column_(column) {}
  explicit ParseError(const std::string& message)
      : std::runtime_error(message), row_(0), column_(0) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace cvinfer

#endif  // CVINFER_ERRORS_HPP_
