#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

/// Argument outside the mathematical domain of a function (e.g. entropy(1.5)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integer parameters that do not describe a valid code or query.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A root bracket or iterative solver failed to produce a certified answer.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance too large for exhaustive enumeration.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A code description violates a structural invariant. `invariant()` names it.
class InvariantViolation : public std::invalid_argument {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : std::invalid_argument(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lrc
