#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace courtfilter {

// Bad user input: unreadable files, malformed rows, invalid configuration.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record file row that could not be parsed. Carries the 1-based line.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line)
      : InputError(message + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A precondition between pipeline stages was broken.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace courtfilter
