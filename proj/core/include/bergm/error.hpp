#ifndef BERGM_ERROR_HPP_
#define BERGM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace bergm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Illegal node index or dyad (out of range, or both endpoints in one mode).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed formula or input file. Carries a location when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string location = {})
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A model that cannot be evaluated against the data it was given:
/// unknown attribute, wrong column type, exponent out of range, bad dimension.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Fitting failed. `direction` is set when the failure has a recession
/// direction (complete separation, MLE at infinity).
class EstimationError : public Error {
 public:
  explicit EstimationError(const std::string& message,
                           std::vector<double> direction = {})
      : Error(message), direction_(std::move(direction)) {}

  const std::vector<double>& direction() const noexcept { return direction_; }

 private:
  std::vector<double> direction_;
};

/// Raised only when the caller asked for degeneracy warnings to be fatal.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace bergm

#endif  // BERGM_ERROR_HPP_
