#pragma once

#include <stdexcept>
#include <string>

namespace whid {

/// Base class for all whid errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A complex root set is not closed under conjugation within tolerance.
class ConjugacyError : public Error {
  public:
    using Error::Error;
};

/// An object is structurally unusable (empty numerator, zero polynomial, ...).
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// A filter expected to be stable has a pole on or outside the unit circle.
class InstabilityError : public Error {
  public:
    using Error::Error;
};

/// A frequency response is singular at a requested evaluation point.
class SingularResponseError : public Error {
  public:
    using Error::Error;
};

/// Filter design parameters are out of range.
class DesignError : public Error {
  public:
    using Error::Error;
};

/// A request would exceed a hard enumeration or memory guard.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// A rational fit is rank deficient or otherwise unsolvable.
class FitDegenerateError : public Error {
  public:
    using Error::Error;
};

/// A configuration file or command-line input is invalid.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace whid
