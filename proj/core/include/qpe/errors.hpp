#pragma once

#include <stdexcept>
#include <string>

namespace qpe {

/// Malformed input text (Hamiltonian / initial-state files). Carries a
/// 1-based line number when the failing line is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// A numeric precondition on otherwise well-formed data failed
/// (non-Hermitian matrix, unnormalized state, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested problem size exceeds what dense linear algebra can hold.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpe
