#pragma once

#include <string>
#include <vector>

#include "mcbench/types.hpp"

namespace mcbench {

// A single invariant violation. Violations are data, not failures: callers
// decide whether to abort. `where` identifies the offending element by
// content (not list position) so reports are order-independent.
struct Violation {
  std::string where;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Checks every structural invariant of an instance: price bound ordering,
// segment sign conventions, block sign/consecutiveness/price rules and
// period coverage. Empty result means the instance is valid and satisfies
// all downstream preconditions. Pure; order-independent over segment lists.
std::vector<Violation> validate_instance(const Instance& instance);

inline bool is_valid(const Instance& instance) {
  return validate_instance(instance).empty();
}

}  // namespace mcbench
