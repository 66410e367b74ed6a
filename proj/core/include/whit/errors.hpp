#pragma once

#include <stdexcept>
#include <string>

namespace whit {

// Parameter outside the range where a representation is valid.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Result cannot be trusted at the working precision (e.g. catastrophic
// cancellation detected in a determinant).
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Iterative scheme failed to converge.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace whit
