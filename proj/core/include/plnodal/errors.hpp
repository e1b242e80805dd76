#pragma once

#include <stdexcept>
#include <string>

namespace plnodal {

// Base class for data-dependent solver failures (as opposed to programming
// errors, which use the standard logic_error family).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A profile that must be nonzero has norm below 1e-14.
class ZeroInputError : public Error {
 public:
  using Error::Error;
};

// The Nehari function phi(t) never became negative within the bracket cap;
// the instance is numerically not superlinear.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

// Annulus shorter than four grid elements.
class DegenerateAnnulusError : public Error {
 public:
  using Error::Error;
};

// A glued piece does not carry the alternating sign it should.
class SignPatternViolationError : public Error {
 public:
  using Error::Error;
};

// A node gap collapsed (or r_max cannot hold the requested node count).
class CollapseDetectedError : public Error {
 public:
  using Error::Error;
};

// Shooting bracket endpoints do not straddle the requested node count.
class BracketInvalidError : public Error {
 public:
  using Error::Error;
};

// No amplitude in the bracket produced a decaying k-node trajectory.
class NoDecayError : public Error {
 public:
  using Error::Error;
};

// The adaptive integrator underflowed its step size.
class StepFailureError : public Error {
 public:
  StepFailureError(const std::string& what, double radius)
      : Error(what), radius(radius) {}
  double radius;
};

// Node counting on a numerically zero profile.
class AllBelowThresholdError : public Error {
 public:
  using Error::Error;
};

}  // namespace plnodal
