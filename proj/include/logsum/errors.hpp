#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logsum {

// Base type for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A log line produced no tokens.
class EmptyLog : public Error {
 public:
  EmptyLog() : Error("log line is empty after tokenization") {}
  explicit EmptyLog(const std::string& what) : Error(what) {}
};

// Malformed input file; carries the source name and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Vector length mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input that makes the requested quantity meaningless (e.g. empty originals).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Invalid option or parameter value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace logsum
