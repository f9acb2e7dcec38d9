#pragma once

#include <stdexcept>
#include <string>

namespace dphase {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFiniteExponent : public Error {
 public:
  using Error::Error;
};

/// A density, nodal value or integrand evaluated to NaN or infinity.
class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(const std::string& what, long element = -1)
      : Error(what), element_(element) {}
  /// Offending element index, or -1 when not tied to an element.
  long element() const noexcept { return element_; }

 private:
  long element_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dphase
