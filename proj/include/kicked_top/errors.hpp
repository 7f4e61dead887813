#pragma once

#include <stdexcept>
#include <string>

namespace kt {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: violated precondition or malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The computation itself broke down (singular matrix element, pole, failed census).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A matrix element of the effective Hamiltonian hits kappa(2m+1) = 4 j l pi.
class SingularityError : public NumericalError {
 public:
  SingularityError(double m, long l, const std::string& what)
      : NumericalError(what), m_(m), l_(l) {}

  double m() const noexcept { return m_; }
  long l() const noexcept { return l_; }

 private:
  double m_;
  long l_;
};

}  // namespace kt
