#pragma once

#include <stdexcept>
#include <string>

namespace hddist {

// Base for all library errors so callers (the CLI in particular) can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate an operation's preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Malformed CSV input. Carries the 1-based line and column of the offending cell.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Malformed binary/structured file (condensed matrix, params JSON, config).
class FormatError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A class is too small for the requested pooled statistic.
class DegenerateClassError : public Error {
 public:
  using Error::Error;
};

}  // namespace hddist
