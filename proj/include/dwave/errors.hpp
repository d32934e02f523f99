#pragma once

#include <stdexcept>
#include <string>

namespace dwave {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: configuration values, coefficient tables, files.
class DomainError : public Error {
 public:
  using Error::Error;
};
class ConfigurationError : public Error {
 public:
  using Error::Error;
};
class InvalidCoefficientError : public Error {
 public:
  using Error::Error;
};
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};
class OutOfScopeError : public Error {
 public:
  using Error::Error;
};
class InfeasibleError : public Error {
 public:
  using Error::Error;
};
class InputError : public Error {
 public:
  using Error::Error;
};
class ContractError : public Error {
 public:
  using Error::Error;
};
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Failures of the numerics themselves.
class NumericalError : public Error {
 public:
  using Error::Error;
};
class FitInfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dwave
