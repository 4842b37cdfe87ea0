#pragma once

#include <stdexcept>
#include <string>

namespace certiposi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point or polynomial dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A requested representation degree is below the polynomial degree.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Mismatched or invalid simplex domains.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, rationals, parameters).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A degree search hit its cap without reaching its target.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The objective is not positive on the feasible set.
class NotPositive : public Error {
 public:
  using Error::Error;
};

/// A numeric procedure failed (no feasible point, KKT residual too large, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace certiposi
