#pragma once

#include <stdexcept>
#include <string>

namespace geo3 {

/// A point lies outside the declared domain of a chart or field.
class DomainError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Caller misuse: mismatched charts, unknown ids, malformed arguments.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant (orthonormality, SPD metric, natural frame shape) failed.
class InvariantViolation : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// The map is not a submersion where it was required to be one (rank deficiency).
class StructuralFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace geo3
