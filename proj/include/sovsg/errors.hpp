#ifndef SOVSG_ERRORS_HPP
#define SOVSG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sovsg {

// Each error class maps onto one CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

// Invalid parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// A numerical check or solve missed its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// Parameters sit on (or too close to) the non-generic variety: repeated
// zeros, colliding grids, non-simple joint spectra.
class DegenerateError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace sovsg

#endif  // SOVSG_ERRORS_HPP
