#pragma once

#include <stdexcept>
#include <string>

namespace necrostab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (bad index, r > R, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Model parameters or run configuration violate their invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A root finder, shooting iteration or time integrator failed.
class SolverError : public Error {
 public:
  SolverError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an artifact failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace necrostab
