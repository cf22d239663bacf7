#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bjj {

/// A value outside its allowed domain. `field()` names the offending parameter.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numerical failure: non-convergence, lost normalization, bad fit.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double worst_residual = 0.0)
      : std::runtime_error(what), worst_residual_(worst_residual) {}
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

/// The extremum of a scanned curve sits on the boundary of the scanned range.
class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

class FitError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bjj
