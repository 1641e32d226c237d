#pragma once

#include <stdexcept>

namespace tropk {

/// An argument lies outside the domain of an operation (mixed semirings,
/// unknown points, vectors outside a semimodule, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An object violates one of its own invariants (inconsistent tabulation,
/// a construction whose postcondition failed).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation is not available for the chosen semiring or representation.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tropk
