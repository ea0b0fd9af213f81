#pragma once

#include <stdexcept>
#include <string>

namespace qfin {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called with q outside its admissible regime (e.g. boundary theory with q >= 1).
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Infinite q-Pochhammer symbol requested with q >= 1.
class InfiniteProductOutsideSubUnit : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// flip_reduction applied with q <= 1.
class NotSuperUnit : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// No directed path joins the two vertices.
class Unreachable : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its guard (see enumeration_limit()).
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments, e.g. an out-of-range level or an inconsistent word length.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonIntegerParamsInExactMode : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Field construction failures.
class FieldError : public Error {
 public:
  using Error::Error;
};

class NotPrime : public FieldError {
 public:
  using FieldError::FieldError;
};

class NotIrreducible : public FieldError {
 public:
  using FieldError::FieldError;
};

}  // namespace qfin
