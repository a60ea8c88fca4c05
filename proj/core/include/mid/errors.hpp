#pragma once

#include <stdexcept>
#include <string>

namespace mid {

// Exit status the CLI maps each error family to.
enum class ErrorKind { Domain = 2, Numerical = 3, Io = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::Numerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

// j_x = 0 when scaling to (k_hat, beta_hat).
class ScalingUndefined : public DomainError {
 public:
  using DomainError::DomainError;
};

// Double-root formula hit k_hat^2 = 3 away from the triple point.
class DegenerateDenominator : public DomainError {
 public:
  using DomainError::DomainError;
};

class ContractionFailure : public NumericalError {
 public:
  ContractionFailure(const std::string& what, double L)
      : NumericalError(what), constant(L) {}
  double constant;
};

class IterationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, double x) : DomainError(what), location(x) {}
  double location;
};

}  // namespace mid
