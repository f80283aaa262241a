#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid physical or numerical parameters (bad n, delta, beta at a pole, ...).
class ParameterError : public Error {
 public:
  enum class Reason {
    bad_dimension,
    non_finite,
    non_positive_horizon,
    excluded_pole,
    not_integrable,
    bad_grid,
    bad_argument,
  };

  ParameterError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Evaluation at a pole of a special function (Gamma at 0, -1, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration could not reach the requested accuracy within its caps.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature stalled before meeting its tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Lookup outside the interval covered by a table.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Time stepping blew up or the step size underflowed.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable data file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonlocal
