#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bandlim {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (|t| > 1, z <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Order outside [0, kMaxOrder].
class InvalidOrder : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Structurally invalid input (empty series, bad parameters, rule too small).
class ValidationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A user-supplied function returned a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double at) : Error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// An iterative scheme ran out of budget. Carries the last two estimates.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, std::complex<double> previous,
                std::complex<double> last)
      : Error(what), previous_(previous), last_(last) {}
  std::complex<double> previous() const noexcept { return previous_; }
  std::complex<double> last() const noexcept { return last_; }

 private:
  std::complex<double> previous_;
  std::complex<double> last_;
};

/// The operator symbol F(it) vanishes (numerically) somewhere on [-1, 1].
class SingularSymbol : public DomainError {
 public:
  SingularSymbol(const std::string& what, double near_t)
      : DomainError(what), near_t_(near_t) {}
  double near_t() const noexcept { return near_t_; }

 private:
  double near_t_;
};

/// Input file missing, unreadable or malformed on disk.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bandlim
