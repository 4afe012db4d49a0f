#pragma once

#include <stdexcept>
#include <string>

namespace tdho {

/// Input outside the mathematical domain of an operation (unreachable scale
/// factor, non-positive frequency, violated precondition).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed to deliver its accuracy contract (step budget
/// exhausted, special function not finite, quadrature not converged).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdho
