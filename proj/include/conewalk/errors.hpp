#pragma once

#include <stdexcept>
#include <string>

namespace conewalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent caller input (dimension mismatch, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Fiber data that contradicts the Shioda-Tate count.
class InconsistentDataError : public InputError {
 public:
  using InputError::InputError;
};

class LookupError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace conewalk
