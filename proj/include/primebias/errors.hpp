#pragma once

#include <stdexcept>
#include <cstdint>
#include <string>

namespace primebias {

/// Root of everything this library throws on bad input or exhausted limits.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (n = 0, odd k, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested range is empty (e.g. primes up to a limit below 2).
class EmptyRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Request exceeds a configured size or numeric limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A census constraint violates the divisibility hypotheses it is meant to test.
class ConstraintError : public DomainError {
 public:
  ConstraintError(const std::string& what, std::uint64_t offending_prime)
      : DomainError(what), prime_(offending_prime) {}
  std::uint64_t offending_prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

}  // namespace primebias
