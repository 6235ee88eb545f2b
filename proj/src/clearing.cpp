#include "mcbench/clearing.hpp"

#include <algorithm>
#include <cmath>

#include "mcbench/simplex.hpp"

namespace mcbench {

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
  }
  return "?";
}

std::optional<Rule> rule_from_string(const std::string& s) {
  if (s == "R1" || s == "r1") return Rule::R1;
  if (s == "R2" || s == "r2") return Rule::R2;
  if (s == "R3" || s == "r3") return Rule::R3;
  return std::nullopt;
}

InstanceCurves InstanceCurves::build(const Instance& inst) {
  InstanceCurves c;
  c.supply.reserve(inst.num_periods());
  c.demand.reserve(inst.num_periods());
  for (int t = 0; t < inst.num_periods(); ++t) {
    c.supply.push_back(
        aggregate(inst.segments(t, Direction::Supply), Direction::Supply,
                  inst.bounds));
    c.demand.push_back(
        aggregate(inst.segments(t, Direction::Demand), Direction::Demand,
                  inst.bounds));
  }
  return c;
}

Money block_surplus_eps(const BlockBid& block, const PriceBounds& bounds) {
  const double pscale =
      std::max(std::fabs(bounds.p_min), std::fabs(bounds.p_max));
  return 1e-9 * (1.0 + block.total_volume() * pscale);
}

Money block_surplus(const BlockBid& block, const std::vector<double>& prices) {
  Money s = 0.0;
  for (const auto& [t, q] : block.quantities)
    s += q * (block.price - prices[t]);
  return s;
}

std::optional<Evaluation> evaluate_assignment(const Instance& inst,
                                              const InstanceCurves& curves,
                                              const Assignment& assignment) {
  Evaluation eval;
  eval.assignment = assignment;
  eval.periods.resize(inst.num_periods());

  std::vector<Quantity> net(inst.num_periods(), 0.0);
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    if (!assignment.accepts(static_cast<int>(b))) continue;
    for (const auto& [t, q] : inst.blocks[b].quantities) {
      net[t] += q;
      eval.block_money += q * inst.blocks[b].price;
    }
  }

  Money hourly = 0.0;
  for (int t = 0; t < inst.num_periods(); ++t) {
    auto point = intersect(curves.supply[t], curves.demand[t], net[t]);
    if (!point) return std::nullopt;
    hourly += hourly_objective(curves.supply[t], curves.demand[t],
                               point->supply_x, point->demand_x);
    eval.periods[t] = {t, std::move(*point), net[t]};
  }
  eval.total_surplus = hourly + eval.block_money;
  return eval;
}

std::optional<Evaluation> evaluate_assignment(const Instance& inst,
                                              const Assignment& assignment) {
  return evaluate_assignment(inst, InstanceCurves::build(inst), assignment);
}

namespace {

// Blocks constrained by the rule: accepted ones under R2 (need surplus
// >= 0), rejected ones under R3 (need surplus <= 0).
std::vector<int> constrained_blocks(const Instance& inst,
                                    const Assignment& assignment, Rule rule) {
  std::vector<int> out;
  if (rule == Rule::R1) return out;
  for (int b = 0; b < static_cast<int>(inst.blocks.size()); ++b) {
    const bool acc = assignment.accepts(b);
    if ((rule == Rule::R2 && acc) || (rule == Rule::R3 && !acc))
      out.push_back(b);
  }
  return out;
}

bool rule_holds_at(const Instance& inst, const std::vector<int>& blocks,
                   Rule rule, const std::vector<double>& prices) {
  for (int b : blocks) {
    const Money s = block_surplus(inst.blocks[b], prices);
    const Money eps = block_surplus_eps(inst.blocks[b], inst.bounds);
    if (rule == Rule::R2 && s < -eps) return false;
    if (rule == Rule::R3 && s > eps) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<double>> select_prices(const Instance& inst,
                                                 const Evaluation& eval,
                                                 Rule rule) {
  const int T = inst.num_periods();
  std::vector<double> mids(T), lo(T), hi(T);
  bool all_degenerate = true;
  for (int t = 0; t < T; ++t) {
    lo[t] = eval.periods[t].point.p_lo;
    hi[t] = eval.periods[t].point.p_hi;
    mids[t] = eval.periods[t].point.mid();
    all_degenerate &= eval.periods[t].point.degenerate();
  }

  const std::vector<int> blocks =
      constrained_blocks(inst, eval.assignment, rule);
  if (blocks.empty()) return mids;
  if (all_degenerate) {
    if (rule_holds_at(inst, blocks, rule, mids)) return mids;
    return std::nullopt;
  }

  // LP over deviations: p_t = mid_t + u_t - v_t with 0 <= u_t <= hi-mid,
  // 0 <= v_t <= mid-lo, minimizing sum(u+v), subject to one surplus-sign
  // row per constrained block.
  const int n = 2 * T;
  std::vector<double> objective(n, 1.0);
  std::vector<LpRow> rows;
  rows.reserve(blocks.size() + n);
  for (int t = 0; t < T; ++t) {
    LpRow up;
    up.coeffs.assign(n, 0.0);
    up.coeffs[t] = 1.0;
    up.relation = LpRelation::LessEq;
    up.rhs = std::max(0.0, hi[t] - mids[t]);
    rows.push_back(std::move(up));
    LpRow dn;
    dn.coeffs.assign(n, 0.0);
    dn.coeffs[T + t] = 1.0;
    dn.relation = LpRelation::LessEq;
    dn.rhs = std::max(0.0, mids[t] - lo[t]);
    rows.push_back(std::move(dn));
  }
  for (int b : blocks) {
    const BlockBid& blk = inst.blocks[b];
    LpRow row;
    row.coeffs.assign(n, 0.0);
    double rhs = 0.0;  // surplus at mids
    for (const auto& [t, q] : blk.quantities) {
      row.coeffs[t] = -q;  // d surplus / d u_t = -Q_bt
      row.coeffs[T + t] = q;
      rhs += q * (blk.price - mids[t]);
    }
    // surplus(mids) + sum(coeffs * x) >= 0 for R2, <= 0 for R3.
    row.relation =
        rule == Rule::R2 ? LpRelation::GreaterEq : LpRelation::LessEq;
    row.rhs = -rhs;
    rows.push_back(std::move(row));
  }

  const LpResult lp = solve_lp(objective, rows);
  if (lp.status != LpStatus::Optimal) return std::nullopt;

  std::vector<double> prices(T);
  for (int t = 0; t < T; ++t)
    prices[t] = std::clamp(mids[t] + lp.x[t] - lp.x[T + t], lo[t], hi[t]);
  if (!rule_holds_at(inst, blocks, rule, prices)) return std::nullopt;
  return prices;
}

std::vector<BlockStatus> classify_blocks(const Instance& inst,
                                         const Assignment& assignment,
                                         const std::vector<double>& prices) {
  std::vector<BlockStatus> out(inst.blocks.size());
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    BlockStatus& st = out[b];
    st.accepted = assignment.accepts(static_cast<int>(b));
    st.surplus = block_surplus(inst.blocks[b], prices);
    const Money eps = block_surplus_eps(inst.blocks[b], inst.bounds);
    st.moneyness = st.surplus > eps    ? Moneyness::In
                   : st.surplus < -eps ? Moneyness::Out
                                       : Moneyness::At;
    st.cls = BlockClass::Normal;
    if (st.accepted && st.moneyness == Moneyness::Out) st.cls = BlockClass::Pab;
    if (!st.accepted && st.moneyness == Moneyness::In) st.cls = BlockClass::Prb;
  }
  return out;
}

void finalize_at_prices(const Instance& inst, const InstanceCurves& curves,
                        Evaluation& eval, const std::vector<double>& prices) {
  for (int t = 0; t < inst.num_periods(); ++t) {
    PeriodClearing& pc = eval.periods[t];
    fill_at_price(curves.supply[t], curves.demand[t], pc.net_block_q,
                  prices[t], pc.point);
  }
}

bool cap_binding(const PriceBounds& bounds, const std::vector<double>& prices) {
  const double eps = kPriceEps * (1.0 + bounds.span());
  for (double p : prices)
    if (p <= bounds.p_min + eps || p >= bounds.p_max - eps) return true;
  return false;
}

std::vector<Rule> feasible_rules(const Instance& inst,
                                 const Evaluation& eval) {
  std::vector<Rule> out;
  for (Rule r : {Rule::R1, Rule::R2, Rule::R3})
    if (select_prices(inst, eval, r)) out.push_back(r);
  return out;
}

}  // namespace mcbench
