// Error types shared across the library. Every failure carries a stable
// machine-readable code; parse failures additionally carry the 1-based
// source line (and column, when known).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citerank {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Malformed or inconsistent input data.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, std::size_t line,
             std::size_t column = 0)
      : Error(std::move(code), message + location_suffix(line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string location_suffix(std::size_t line, std::size_t column) {
    if (line == 0) return " (whole file)";
    std::string s = " (line " + std::to_string(line);
    if (column != 0) s += ", column " + std::to_string(column);
    return s + ")";
  }

  std::size_t line_;
  std::size_t column_;
};

/// Violated precondition or domain constraint outside of parsing.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Filesystem / stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace citerank
