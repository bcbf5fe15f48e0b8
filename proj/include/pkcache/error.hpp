#pragma once

#include <stdexcept>
#include <string>

namespace pkcache {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands built over different fields were combined.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Vectors or matrices whose shapes do not line up.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// File length is not a positive multiple of the subpacketization.
class InvalidLength : public Error {
 public:
  using Error::Error;
};

class InvalidDemand : public Error {
 public:
  using Error::Error;
};

// A missing multicast signal could not be expressed through the transmitted
// ones. The delivery construction guarantees this never happens, so seeing
// it means a bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class DecodeFailure : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class AuditTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace pkcache
