#pragma once

#include <stdexcept>
#include <string>

namespace vexspace {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised when p(x) > u(x) somewhere; callers map this to exit code 2.
struct OrderingError : DomainError {
  using DomainError::DomainError;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace vexspace
