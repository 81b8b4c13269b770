#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fptkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure (series, quadrature, root finding) did not reach
/// its tolerance. `achieved_error()` is the best error estimate obtained.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// The power-law tail is too heavy for the requested moment to exist.
/// `raw_value()` carries the formula value evaluated regardless, so curves
/// in the invalid regime can still be emitted.
class HeavyTailError : public Error {
 public:
  HeavyTailError(const std::string& what, std::string denominator, double raw_value)
      : Error(what), denominator_(std::move(denominator)), raw_value_(raw_value) {}
  const std::string& denominator() const noexcept { return denominator_; }
  double raw_value() const noexcept { return raw_value_; }

 private:
  std::string denominator_;
  double raw_value_;
};

/// Malformed or unusable input data. `row()` is 1-based; 0 when not tied to a row.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t row = 0) : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Too few usable points for a regression.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fptkit
