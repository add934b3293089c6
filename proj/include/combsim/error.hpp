#pragma once

#include <stdexcept>
#include <string>

namespace combsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid comb parameters, channel settings or option values.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Grid mismatch, insufficient coverage, or memory-cap violation.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Non-convergence, eigensolver failure, truncation or integrator instability.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace combsim
