#pragma once

#include <stdexcept>
#include <string>

namespace weil_atlas {

// Base of every error raised by the library. The CLI maps InputError (and
// its subclasses) to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
  public:
    using Error::Error;
};

// p does not split completely in K.
class SplitError : public InputError {
  public:
    using InputError::InputError;
};

// Requested enumeration is beyond the documented size limits.
class SizeError : public InputError {
  public:
    using InputError::InputError;
};

class OrdinarityError : public InputError {
  public:
    using InputError::InputError;
};

class DegenerateFieldError : public InputError {
  public:
    using InputError::InputError;
};

class PrecisionError : public Error {
  public:
    using Error::Error;
};

class ExponentCapError : public Error {
  public:
    using Error::Error;
};

class SearchExhausted : public Error {
  public:
    using Error::Error;
};

class OracleMismatch : public Error {
  public:
    using Error::Error;
};

// A mathematical invariant that must hold did not. `check()` names it.
class InvariantError : public Error {
  public:
    InvariantError(std::string check, const std::string &detail)
        : Error(check + ": " + detail), check_(std::move(check)) {}
    const std::string &check() const noexcept { return check_; }

  private:
    std::string check_;
};

} // namespace weil_atlas
