#pragma once

#include <stdexcept>
#include <string>

namespace cpf {

/// Covariance matrix or mean vector that does not describe a bosonic Gaussian state.
class InvalidState : public std::invalid_argument {
 public:
  explicit InvalidState(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameter outside its admissible range (transmissivity, photon number, index...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Linear-algebra breakdown that physical inputs should never trigger.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpf
