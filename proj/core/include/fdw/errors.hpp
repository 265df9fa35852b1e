#pragma once

#include <stdexcept>
#include <string>

namespace fdw {

/// Input data violating a documented precondition (e.g. non-Hermitian spectrum).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Grid or experiment configuration unable to resolve the requested quantity.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied callable produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdw
