#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condest {

// Caller broke a documented precondition (dimension mismatch, parameter out
// of range, malformed shape).
class ContractError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Matrix Market input could not be parsed. line() is 1-based; 0 means the
// problem is not tied to a particular line (e.g. premature end of file).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_{line} {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Triangular solve hit an exactly zero pivot.
class SingularMatrixError : public std::runtime_error {
public:
  explicit SingularMatrixError(std::size_t index)
      : std::runtime_error("zero diagonal entry at index " + std::to_string(index)),
        index_{index} {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

// An iterative kernel exhausted its iteration or restart budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace condest
