#pragma once

#include <stdexcept>
#include <string>

namespace sidec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Shape mismatch or a configured size cap was exceeded.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A produced certificate failed its own exact re-check. Never expected.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sidec
