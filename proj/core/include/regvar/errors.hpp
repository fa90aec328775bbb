#pragma once

#include <stdexcept>
#include <string>

namespace regvar {

/// A point lies outside the group (or function) domain it was used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two group elements from different Popa groups were combined.
class ParamMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tabulated function was evaluated outside its abscissa range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed input file or literal. Carries the offending 1-based line (0 if n/a).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace regvar
