#pragma once

#include <stdexcept>
#include <string>

namespace bilingam {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value or configuration violates a basic precondition (NaN/Inf input,
/// alpha outside (0,1), malformed options).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A series has zero variance (or all pairwise differences vanish), so the
/// requested statistic is undefined.
class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

/// Paired series have different lengths.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation that requires standardized input received a series whose
/// mean or standard deviation is off by more than the tolerance.
class NotStandardized : public Error {
 public:
  using Error::Error;
};

/// The sample is shorter than the statistical floor of the operation.
class InsufficientSample : public Error {
 public:
  using Error::Error;
};

/// A CSV input could not be parsed.
class MalformedCsv : public Error {
 public:
  using Error::Error;
};

}  // namespace bilingam
