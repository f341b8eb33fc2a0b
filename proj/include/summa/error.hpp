#pragma once

#include <stdexcept>
#include <string>

namespace summa {

/// Bad argument, unknown catalog entry, or malformed text input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the given data.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An inequality's hypotheses are not met by the fixture (see `--force`).
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver stopped without reaching its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_bound(lower), upper_bound(upper) {}

  double lower_bound;
  double upper_bound;
};

}  // namespace summa
