#pragma once

#include <stdexcept>
#include <string>

namespace siegelkit {

/// Base class for all siegelkit errors. The message always names the
/// violated precondition or the failing resource.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct NearSingular : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NotSameSegment : Error {
  using Error::Error;
};

/// Raised when a tolerance-certified result cannot be certified at the
/// working precision. Callers should retry at higher precision.
struct PrecisionExhausted : Error {
  using Error::Error;
};

struct RetriesExhausted : Error {
  using Error::Error;
};

struct InconsistentOmega : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace siegelkit
