#pragma once

#include <stdexcept>
#include <string>

namespace tgspec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative refinement did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied function returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested discretization is too large to assemble densely.
class SizingError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class InfeasibleConstraints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankDeficientOutputs : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tgspec
