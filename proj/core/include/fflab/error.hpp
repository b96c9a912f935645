#pragma once

#include <stdexcept>
#include <string>

namespace fflab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad parameters or violated preconditions supplied by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

/// Evaluation point at or outside the open domain of a weight.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// Operation not defined for this weight family.
class Unsupported : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported"; }
};

/// Quadrature or recurrence lost the accuracy it promises.
class PrecisionFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precision_failure"; }
};

/// Iterative solver stopped without meeting its tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence_failure"; }
};

/// A constructed object violates a property it is required to have.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& what, double where)
      : Error(what), where_(where) {}
  const char* kind() const noexcept override { return "constraint_violation"; }
  double where() const noexcept { return where_; }

 private:
  double where_;
};

}  // namespace fflab
