#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

/// Input outside an operation's mathematical domain (zero inverse, wrong
/// subfield order, singular collineation, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated hypothesis of a verification harness does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its configured candidate budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spreadlab
