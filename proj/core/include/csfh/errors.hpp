#pragma once

#include <stdexcept>
#include <string>

namespace csfh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid ansatz parameters (e.g. a = 0 before the critical substitution).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate or non-convex curve geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A time step exceeded the explicit stability bound.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double required_dt)
      : Error(what), required_dt_(required_dt) {}
  double required_dt() const noexcept { return required_dt_; }

 private:
  double required_dt_;
};

/// Malformed input file or text.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace csfh
