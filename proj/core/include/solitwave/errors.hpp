#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solitwave {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: parameters, grids, configuration values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure raised while a computation is running.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularDispersionError : public NumericalError {
 public:
  SingularDispersionError(std::size_t mode, double det)
      : NumericalError("dispersion matrix is singular at mode " + std::to_string(mode) +
                       " (det = " + std::to_string(det) + ")"),
        mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

 private:
  std::size_t mode_;
};

/// The stabilizing factors cannot be formed (0/0), typically a zero profile.
class DegenerateStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedFunctionalError : public Error {
 public:
  using Error::Error;
};

class StabilityConfigError : public NumericalError {
 public:
  StabilityConfigError(std::size_t mode, double denominator)
      : NumericalError("theta-scheme denominator vanishes at mode " + std::to_string(mode) +
                       " (value " + std::to_string(denominator) + ")"),
        mode_(mode) {}
  std::size_t mode() const noexcept { return mode_; }

 private:
  std::size_t mode_;
};

class BlowUpError : public NumericalError {
 public:
  BlowUpError(std::size_t step, std::string detail)
      : NumericalError("non-finite state after step " + std::to_string(step) +
                       (detail.empty() ? std::string{} : ": " + detail)),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class SingularJacobianError : public NumericalError {
 public:
  SingularJacobianError(int iteration, double rcond)
      : NumericalError("Newton Jacobian is singular at iteration " + std::to_string(iteration) +
                       " (reciprocal condition estimate " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

}  // namespace solitwave
