#pragma once

#include <stdexcept>
#include <string>

namespace cwrev {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a (profile, half-width) pair does not describe a convex body.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised when a normal flow would push the body past w = w0(h).
class ConvexityError : public Error {
 public:
  ConvexityError(const std::string& what, double max_tau) : Error(what), max_tau_(max_tau) {}
  double max_tau() const noexcept { return max_tau_; }

 private:
  double max_tau_;
};

/// Raised by constructions on piecewise profiles whose geometric preconditions fail.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwrev
