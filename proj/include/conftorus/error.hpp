#pragma once

#include <stdexcept>
#include <string>

namespace conftorus {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (config files, CSV, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A symbolic identity or a structural invariant failed.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// A numerical result is below its declared quality bar.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. s <= 0 for G).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace conftorus
