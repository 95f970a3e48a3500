#pragma once

#include <stdexcept>
#include <string>

namespace hhnet {

// Parameter outside the family's admissible range (rejected at construction).
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of an evaluator, e.g. a pgf at s > 1.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Quantity undefined for the given distribution (mu_D == 0).
class DegenerateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Triangular system produced a probability outside the admissible window.
class ConditioningError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// critical_lambda_g: no lambda_G makes the process supercritical.
class NoRootError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Operation not defined for the selected initial-infective mode.
class ModeError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace hhnet
