#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcbench/clearing.hpp"
#include "mcbench/types.hpp"

namespace mcbench {

struct SolveParams {
  Money absolute_gap = 100.0;  // currency; 0 means prove exact optimality
  double time_limit_s = 120.0;
  std::optional<long long> node_limit;
  uint64_t deterministic_seed = 0;
};

enum class SolveStatus { Optimal, GapReached, TimeLimit, Infeasible };

const char* to_string(SolveStatus status);

struct BlockOutcome {
  std::string id;
  bool accepted = false;
  Money surplus = 0.0;
  BlockClass cls = BlockClass::Normal;
  Moneyness moneyness = Moneyness::At;
};

struct Solution {
  Rule rule = Rule::R1;
  SolveStatus status = SolveStatus::Infeasible;
  bool has_incumbent = false;
  Assignment assignment;
  std::vector<double> prices;
  Evaluation evaluation;  // periods finalized at `prices`
  std::vector<BlockOutcome> blocks;
  Money total_surplus = 0.0;
  Money bound = 0.0;  // proven upper bound on any compliant assignment
  Money gap = 0.0;    // bound - total_surplus, >= 0 when an incumbent exists
  long long nodes_explored = 0;
  double wall_time_s = 0.0;
  bool cap_binding = false;

  int count_class(BlockClass c) const {
    int n = 0;
    for (const BlockOutcome& b : blocks) n += b.cls == c;
    return n;
  }
};

// Partial assignment: -1 undecided, 0 rejected, 1 accepted per block.
using PartialAssignment = std::vector<int8_t>;

// Surplus of the relaxation where every undecided block becomes divisible
// and period-decoupled: each period independently clears with the block's
// quantity offered as a divisible step at its bid price. Dominates the
// true optimum of every completion under every rule. Returns nullopt when
// even the relaxation cannot balance (no completion is feasible).
std::optional<Money> upper_bound(const Instance& instance,
                                 const InstanceCurves& curves,
                                 const PartialAssignment& partial);
std::optional<Money> upper_bound(const Instance& instance,
                                 const PartialAssignment& partial);

// Best-first branch-and-bound over block accept/reject decisions,
// maximizing total surplus subject to the rule's price feasibility.
// Deterministic for fixed params whenever the run terminates by bound
// (time-limited runs cut a deterministic node sequence at a wall-clock
// point). Leaves evaluate the full clearing plus rule price selection.
Solution solve(const Instance& instance, Rule rule, const SolveParams& params);

// Comparison used to pick among candidate incumbents: higher surplus wins;
// exact ties break toward fewer accepted blocks, then toward rejecting the
// lowest-index differing block.
bool incumbent_better(Money lhs_surplus, const Assignment& lhs,
                      Money rhs_surplus, const Assignment& rhs);

// Builds a reportable Solution from a chosen assignment: fractions
// finalized at the selected prices, blocks classified, cap flag set.
Solution assemble_solution(const Instance& instance,
                           const InstanceCurves& curves, Rule rule,
                           SolveStatus status, const Evaluation& evaluation,
                           const std::vector<double>& prices, Money bound,
                           long long nodes, double wall_time_s);

}  // namespace mcbench
