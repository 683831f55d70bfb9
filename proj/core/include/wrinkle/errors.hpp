#pragma once

#include <stdexcept>
#include <string>

namespace wrinkle {

/// Argument outside the mathematical domain of an operation (e.g. a non-positive stretch).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

private:
  double last_residual_;
};

/// A solved profile contradicts a structural property it must have (e.g. two free boundaries).
class StructuralError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Loads for which the relaxed problem has no minimizer.
class InadmissibleLoadError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature point produced a non-finite integrand.
class IntegrandError : public std::runtime_error {
public:
  IntegrandError(const std::string& what, double r, double theta)
      : std::runtime_error(what), r_(r), theta_(theta) {}
  double radius() const noexcept { return r_; }
  double angle() const noexcept { return theta_; }

private:
  double r_;
  double theta_;
};

/// Malformed or out-of-range configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace wrinkle
