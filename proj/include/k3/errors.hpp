#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace k3 {

/// Syntax or grammar error in textual input. `offset` is a zero-based byte
/// offset into the input; `line` is one-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::size_t line = 1)
      : std::runtime_error(message + " at byte " + std::to_string(offset) + " (line " +
                           std::to_string(line) + ")"),
        offset_(offset),
        line_(line),
        bare_(message) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  const std::string& bare_message() const { return bare_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::string bare_;
};

/// Semantically invalid but syntactically fine input (unknown curve, bad
/// incidence, inconsistent record, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace k3
