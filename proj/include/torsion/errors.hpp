#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torsion {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

/// A precondition on an argument was violated (singular matrix, wrong level, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Integer exponent arithmetic left the 64-bit range.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// A configured work budget was exceeded; `attempted` records the requested amount.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t attempted)
      : Error(what + " (attempted " + std::to_string(attempted) + ")"), attempted_(attempted) {}
  std::size_t attempted() const noexcept { return attempted_; }

 private:
  std::size_t attempted_;
};

}  // namespace torsion
