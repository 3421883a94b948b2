#pragma once

#include <stdexcept>
#include <string>

namespace hetcache {

/// An argument lies outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure (series, quadrature, root search) failed to converge.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operating point cannot be met, e.g. the backhaul time
/// already exceeds the delivery deadline.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hetcache
