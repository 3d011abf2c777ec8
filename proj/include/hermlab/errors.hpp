#pragma once

#include <stdexcept>
#include <string>

namespace hermlab {

/// Base class of every library error. `exit_code()` is what the CLI returns.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const = 0;
};

/// Malformed or out-of-range input.
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Metric and complex structure (or other paired data) are not compatible.
class IncompatibleError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// A construction could not be carried out (e.g. a jet outside the open set).
class ConstructionError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace hermlab
