#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cliquemerge {

// Bad argument: index out of range, mismatched dimensions, unknown tag.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an algorithm does not hold for its input.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A problem entry is not covered by any clique of a decomposition.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cliquemerge
