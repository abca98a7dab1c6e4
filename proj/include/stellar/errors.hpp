#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stellar {

// Bad caller input: unknown node, out-of-range parameter, malformed flag.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well-formed but undefined for this object (e.g. parallel
// paths between servers on the same switch, ABT with no flows).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Construction would exceed the configured node budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Parse failure in a text input; carries the offending 1-based line number
// (0 when the problem is not tied to a line).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stellar
