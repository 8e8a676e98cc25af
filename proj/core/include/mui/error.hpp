#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mui {

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic outside the domain of an operation (inverse of zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact division left a nonzero remainder.
class NotDivisibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold failed. Seeing one of these means
/// either a bug or a counterexample to a verified statement.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configuration was rejected by the resource guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mui
