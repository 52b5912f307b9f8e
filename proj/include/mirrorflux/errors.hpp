#pragma once

#include <stdexcept>
#include <string>

namespace mirrorflux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An elementary function or division was evaluated outside its real domain.
class DomainError : public Error {
 public:
  DomainError(std::string function, double value, std::string where = {})
      : Error(compose(function, value, where)),
        function_(std::move(function)),
        value_(value),
        where_(std::move(where)) {}

  const std::string& function() const noexcept { return function_; }
  double value() const noexcept { return value_; }
  const std::string& where() const noexcept { return where_; }

  DomainError at(const std::string& where) const { return DomainError(function_, value_, where); }

 private:
  static std::string compose(const std::string& fn, double value, const std::string& where) {
    std::string msg = "domain error in " + fn + " at value " + std::to_string(value);
    if (!where.empty()) msg += " (" + where + ")";
    return msg;
  }

  std::string function_;
  double value_;
  std::string where_;
};

/// A point lies outside the region covered by a chart, state or trajectory.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be nonzero (a derivative, a denominator) vanished.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Root finding failed: the target is outside the map's range.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// A map expected to be strictly monotone was not.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// A vacuum state was requested for a chart where no Fock construction exists.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Bad user input: unknown names, out-of-range parameters, malformed configs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// No closed-form reference is registered for the requested scenario/chart.
class OracleUnavailableError : public Error {
 public:
  using Error::Error;
};

}  // namespace mirrorflux
