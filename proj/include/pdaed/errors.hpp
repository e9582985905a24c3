#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdaed {

/// Malformed input that violates a structural invariant (a letter outside the
/// alphabet, a transition endpoint that is not a state, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that cannot be parsed as a document. Carries a 1-based position.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured exploration budget ran out before the answer was known.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdaed
