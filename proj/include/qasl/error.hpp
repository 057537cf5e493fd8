#pragma once

#include <stdexcept>
#include <string>

namespace qasl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (non-finite entries, bad shapes, bad files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on data that does not satisfy its hypothesis.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of definition (zero coordinate, singular factor).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested object exceeds a configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Random generation could not produce an admissible sample within budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qasl
