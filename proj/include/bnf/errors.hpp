#pragma once

#include <stdexcept>
#include <string>

namespace bnf {

// Bad user input: malformed files, out-of-range indices, invalid options.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A mathematical precondition of an operation does not hold
// (resonant content passed to a solver, non-commuting family, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A normal form could not be written as sum_j a_j E^j with E-invariant a_j.
class NotIntegrableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace bnf
