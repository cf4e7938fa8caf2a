#pragma once

#include <stdexcept>
#include <string>

namespace conerate {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (bad shape, row sums, Kraus completeness, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A cone element that must lie in the interior does not.
class NotInterior : public Error {
 public:
  using Error::Error;
};

/// A dual element that must annihilate the unit does not.
class NotTraceless : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the input is too large.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A·x is not a positive multiple of the requested range unit.
class UnitMismatch : public Error {
 public:
  using Error::Error;
};

/// A strictly positive matrix was required but a zero entry was found.
class ZeroEntry : public Error {
 public:
  using Error::Error;
};

/// A contraction factor c < 1 was required.
class NoContraction : public Error {
 public:
  using Error::Error;
};

}  // namespace conerate
