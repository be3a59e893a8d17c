#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qcising {

// Malformed input text. Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) +
                           (column ? ", column " + std::to_string(column) : std::string()) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An exhaustive computation would exceed a configured guard.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string guard, const std::string& message)
      : std::runtime_error(message + " (guard: " + guard + ")"), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

// Numerically ill-posed input, e.g. a singular matrix.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qcising
