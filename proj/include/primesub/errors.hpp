#pragma once

#include <stdexcept>
#include <string>

namespace primesub {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or ownership mismatch: wrong column count, submodules of different
/// parents, an improper submodule where a proper one is required.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation received input outside its domain (both gcd arguments zero,
/// factoring zero, decomposing the zero module).
class DegenerateInput : public InputError {
 public:
  using InputError::InputError;
};

/// The instance is valid but the requested computation is not available for
/// it (infinite module handed to an exhaustive routine, localization at (0)).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A post-condition verified at runtime did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace primesub
