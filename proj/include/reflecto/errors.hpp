#pragma once

#include <stdexcept>
#include <string>

namespace reflecto {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "internal inconsistency" can catch these two.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DimensionError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
  using Error::Error;
};

// The input matrix lies outside the completely-S class, so tightness is not
// a meaningful question for it.
class NotCompletelyS : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Two independent computations that must agree did not. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace reflecto
