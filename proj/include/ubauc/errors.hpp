#pragma once

#include <stdexcept>
#include <string>

namespace ubauc {

// Input data or configuration violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(long line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace ubauc
