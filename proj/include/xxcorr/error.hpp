#pragma once

#include <stdexcept>
#include <string>

namespace xxcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input (out-of-domain parameter, malformed grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class UnsupportedSeparation : public Error {
 public:
  using Error::Error;
};

/// Pairing enumeration would be too expensive for the requested separation.
class ComplexityCap : public Error {
 public:
  using Error::Error;
};

/// Matrix fails the density-matrix checks (trace, positivity).
class NotAState : public Error {
 public:
  using Error::Error;
};

/// A closed form was asked to evaluate a state outside its validity range.
class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

/// A computed quantity is negative beyond float noise.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateRange : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace xxcorr
