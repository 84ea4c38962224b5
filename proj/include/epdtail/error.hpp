#pragma once

#include <stdexcept>
#include <string>

namespace epdtail {

// Error categories map onto the CLI exit codes: usage 1, data 2, numerical 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data could not be read or violates the model's assumptions.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce an estimate (singular system,
/// degenerate statistics, non-convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace epdtail
