#pragma once

#include <stdexcept>
#include <string>

namespace hullfacets {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Structurally invalid call (wrong sizes, inconsistent N/d, bad flags).
class InvalidArgs : public std::invalid_argument {
public:
  explicit InvalidArgs(const std::string& what) : std::invalid_argument(what) {}
};

// Bad model parameter at construction time.
class InvalidParameter : public std::invalid_argument {
public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive integration could not reach the requested tolerance.
class QuadratureFailure : public std::runtime_error {
public:
  QuadratureFailure(const std::string& what, double value, double abs_error)
      : std::runtime_error(what), value(value), abs_error(abs_error) {}
  double value;
  double abs_error;
};

// Point configuration with ties against the facet tolerance.
class DegenerateInput : public std::runtime_error {
public:
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

class NonMonotoneSurvival : public std::runtime_error {
public:
  explicit NonMonotoneSurvival(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceFailure : public std::runtime_error {
public:
  explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

class NonPositiveEpsilon : public std::runtime_error {
public:
  explicit NonPositiveEpsilon(const std::string& what) : std::runtime_error(what) {}
};

class NoSolutionInRange : public std::runtime_error {
public:
  explicit NoSolutionInRange(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hullfacets
