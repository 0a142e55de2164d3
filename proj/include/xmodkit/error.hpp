#pragma once

#include <stdexcept>
#include <string>

namespace xmodkit {

// Malformed input: a table that is not a group, a map that is not a
// homomorphism, a subgroup that is not normal, ...
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction produced data violating an invariant it guarantees.
// Raised only when something upstream is broken.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A search ran out of its node budget before completing.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xmodkit
