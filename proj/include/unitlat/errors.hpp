#pragma once

#include <stdexcept>
#include <string>

namespace unitlat {

/// Input outside an operation's domain (non-squarefree d, mismatched fields,
/// zero divisor, unsupported parameters).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numeric pipeline failed to reach agreement after precision escalation.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation could not be settled at the configured search bounds.
class UnresolvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A catalog entry failed one of its exact structural relations.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string relation, const std::string& detail)
      : std::runtime_error("relation failed: " + relation + (detail.empty() ? "" : " (" + detail + ")")),
        relation_(std::move(relation)) {}

  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

}  // namespace unitlat
