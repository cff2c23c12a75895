#pragma once

#include <stdexcept>
#include <string>

namespace weakmeas {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside its mathematical domain (negative width, efficiency outside (0,1], ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

class InvalidDimension : public DomainError {
  public:
    using DomainError::DomainError;
};

/// A matrix failed the trace / hermiticity / positivity checks of a density operator.
class InvalidState : public DomainError {
  public:
    using DomainError::DomainError;
};

/// The Fock truncation is too small for the requested state and strict mode was asked for.
class TruncationError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Postselection probability vanished, so the conditional quantity does not exist.
class UndefinedWeakValue : public Error {
  public:
    using Error::Error;
};

class UnsupportedCombination : public Error {
  public:
    using Error::Error;
};

}  // namespace weakmeas
