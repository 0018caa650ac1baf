#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request exceeds addressable memory or an index-arithmetic range.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Index outside the stored range of a sequence or window.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Inputs have incompatible lengths, moduli or partitions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A point does not belong to the system's phase space.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value exceeds the unit modulus bound.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

/// Negative time requested on a non-invertible system.
class InvertibilityError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to a polynomial with empty support.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Invalid command-line or file configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A fixture file is missing, unreadable or malformed.
class FixtureError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergolab
