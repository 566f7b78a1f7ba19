#pragma once

#include <stdexcept>
#include <string>

namespace imconf {

/// Base for everything the library throws on bad input or failed numerics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution parameters, alpha levels, data or configuration.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A region family that should be nested in alpha is not.
class NestednessViolation : public Error {
 public:
  NestednessViolation(double alpha_hi, double alpha_lo, const std::string& what)
      : Error(what), alpha_hi_(alpha_hi), alpha_lo_(alpha_lo) {}
  double alpha_hi() const { return alpha_hi_; }
  double alpha_lo() const { return alpha_lo_; }

 private:
  double alpha_hi_;
  double alpha_lo_;
};

/// An assertion resolves to no evaluable points.
class DegenerateAssertion : public Error {
 public:
  using Error::Error;
};

/// The requested operation cannot be expressed with the assertion's representation.
class UnsupportedAssertion : public Error {
 public:
  using Error::Error;
};

/// A contour whose supremum is below one (not a consonant plausibility).
class NonConsonant : public Error {
 public:
  using Error::Error;
};

/// Model pieces disagree, e.g. the data cannot arise from the parameter.
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

/// Interest-parameter value with an empty fiber.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace imconf
