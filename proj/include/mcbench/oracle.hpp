#pragma once

#include <stdexcept>

#include "mcbench/solver.hpp"

namespace mcbench {

inline constexpr int kDefaultOracleCap = 16;

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Brute-force reference: evaluates all 2^|B| assignments through the same
// clearing and price-selection path as the solver and returns the best
// rule-feasible one under the solver's tie-breaking. Status is always
// Optimal with zero gap (or Infeasible when nothing clears). Throws
// OracleCapExceeded when the block count exceeds `cap`.
Solution enumerate_assignments(const Instance& instance, Rule rule,
                               int cap = kDefaultOracleCap);

}  // namespace mcbench
