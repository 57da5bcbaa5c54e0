#pragma once

#include <stdexcept>
#include <string>

namespace tdsharp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid field parameters: non-prime characteristic, bad modulus, k < 1.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic attempted between elements (or matrices) of different fields.
class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inversion of zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operation requested outside the range it supports (e.g. exhaustive
/// enumeration beyond its bound, enumeration of an infinite field).
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Generator or command parameters violate a stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance document or command arguments.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A postcondition that must hold for every valid input was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdsharp
