#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace frictionlab {

// A state left the admissible set (nonpositive density or temperature,
// validity-domain exit, singular closure). Maps to CLI exit status 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Driving forces of a Maxwell-Stefan solve do not sum to zero.
class ConsistencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Implicit friction iteration failed to converge; caller should retry with a
// smaller step.
class StiffnessError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Requested step exceeds the admissible CFL step.
class CflError : public DomainError {
 public:
  CflError(const std::string& what, double admissible_dt)
      : DomainError(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const { return admissible_dt_; }

 private:
  double admissible_dt_;
};

// Violated precondition of an operation (bad arity, too few samples, ...).
// Maps to CLI exit status 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid run configuration. Carries every violation found, not just the
// first. Maps to CLI exit status 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace frictionlab
