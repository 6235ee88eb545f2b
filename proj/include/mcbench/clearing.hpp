#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcbench/curve.hpp"
#include "mcbench/types.hpp"

namespace mcbench {

// Pricing rule sets. R1 places no restriction on paradoxical blocks, R2
// forbids paradoxically accepted blocks (accepted blocks must not lose
// money), R3 forbids paradoxically rejected blocks (rejected blocks must
// not be in the money).
enum class Rule { R1, R2, R3 };

const char* to_string(Rule rule);
std::optional<Rule> rule_from_string(const std::string& s);

enum class Moneyness { Out, At, In };
enum class BlockClass { Normal, Pab, Prb };

struct BlockStatus {
  Money surplus = 0.0;  // sum_t Q_bt * (P_b - p_t)
  Moneyness moneyness = Moneyness::At;
  BlockClass cls = BlockClass::Normal;
  bool accepted = false;
};

// Pre-aggregated per-period curves for one instance. Build once, share
// across assignment evaluations (curves are immutable).
struct InstanceCurves {
  std::vector<AggregatedCurve> supply;
  std::vector<AggregatedCurve> demand;

  static InstanceCurves build(const Instance& instance);
};

struct PeriodClearing {
  int period = 0;
  ClearingPoint point;
  Quantity net_block_q = 0.0;
};

// Result of clearing every period at a fixed block assignment. Price
// intervals are not yet collapsed to a point; total_surplus is already
// final (it does not depend on where inside a flat interval prices land).
struct Evaluation {
  Assignment assignment;
  std::vector<PeriodClearing> periods;
  Money block_money = 0.0;    // accepted blocks' sum_t Q_bt * P_b
  Money total_surplus = 0.0;  // hourly quadratic surplus + block_money
};

// Money-scale tolerance used for block moneyness decisions.
Money block_surplus_eps(const BlockBid& block, const PriceBounds& bounds);

// sum_t Q_bt (P_b - p_t) over the block's active periods.
Money block_surplus(const BlockBid& block, const std::vector<double>& prices);

// Clears every period with the accepted blocks' net quantities folded into
// the balance. Returns nullopt when some period cannot balance (the
// assignment is infeasible).
std::optional<Evaluation> evaluate_assignment(const Instance& instance,
                                              const InstanceCurves& curves,
                                              const Assignment& assignment);
std::optional<Evaluation> evaluate_assignment(const Instance& instance,
                                              const Assignment& assignment);

// Picks one price per period inside that period's clearing interval such
// that the rule holds: under R2 every accepted block keeps surplus >= 0,
// under R3 every rejected block keeps surplus <= 0, under R1 anything
// goes. Among compliant vectors returns the one minimizing the L1
// distance to the interval midpoints (deterministic simplex resolution).
// Returns nullopt when no compliant vector exists (RuleInfeasible).
std::optional<std::vector<double>> select_prices(const Instance& instance,
                                                 const Evaluation& evaluation,
                                                 Rule rule);

std::vector<BlockStatus> classify_blocks(const Instance& instance,
                                         const Assignment& assignment,
                                         const std::vector<double>& prices);

// Recomputes every period's fractions at the selected prices so that the
// balance and the price-reconstruction identity hold at exactly those
// prices. Mutates evaluation.periods[*].point in place.
void finalize_at_prices(const Instance& instance, const InstanceCurves& curves,
                        Evaluation& evaluation,
                        const std::vector<double>& prices);

// True when some selected price sits on a price cap.
bool cap_binding(const PriceBounds& bounds, const std::vector<double>& prices);

// Rules under which the evaluated assignment admits compliant prices.
std::vector<Rule> feasible_rules(const Instance& instance,
                                 const Evaluation& evaluation);

}  // namespace mcbench
