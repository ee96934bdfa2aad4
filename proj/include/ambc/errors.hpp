#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ambc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed scenario, invalid flag value, broken invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Scenario document problem. `fields()` names every offending key.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::vector<std::string> fields, const std::string& what)
      : ValidationError(what), fields_(std::move(fields)) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

/// The polynomial front-end model produced a non-positive or non-finite
/// energy variance (input power far outside the model's range).
class ModelValidityError : public Error {
 public:
  using Error::Error;
};

/// A mathematical quantity is undefined for the given input
/// (zero direct-link gain, coincident hypothesis means, zero denominator).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Pilot-based moment estimation could not produce usable moments.
class EstimationError : public Error {
 public:
  enum class Kind { insufficient_pilots, degenerate_estimate };

  EstimationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ambc
