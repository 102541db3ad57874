#pragma once

#include <stdexcept>
#include <string>

namespace knapfeat {

/// Base class for all knapfeat errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input text does not match the declared instance format.
class MalformedInput : public Error {
public:
  using Error::Error;
};

/// A structural requirement on the data does not hold; the message names
/// the violated requirement.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// A capacity-indexed table would exceed the configured memory budget.
class CapacityTooLarge : public Error {
public:
  using Error::Error;
};

/// A brute-force routine was asked for more items than it can enumerate.
class TooManyItems : public Error {
public:
  using Error::Error;
};

/// A weight profile with no support; signals an upstream bug.
class EmptyProfile : public Error {
public:
  using Error::Error;
};

/// A cluster count outside the valid range for the given data.
class InvalidGroupCount : public Error {
public:
  using Error::Error;
};

/// An upper bound that cannot be valid (non-positive).
class InvalidUpperBound : public Error {
public:
  using Error::Error;
};

/// A projection input column that the caller must supply is absent.
class MissingExternalFeature : public Error {
public:
  using Error::Error;
};

/// A value left the representable range of a plain double.
class Overflow : public Error {
public:
  using Error::Error;
};

}  // namespace knapfeat
