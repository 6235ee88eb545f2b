#include "mcbench/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

namespace mcbench {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::GapReached: return "GapReached";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tie_margin(double v) { return 1e-9 * (1.0 + std::fabs(v)); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

bool incumbent_better(Money lhs_surplus, const Assignment& lhs,
                      Money rhs_surplus, const Assignment& rhs) {
  if (lhs_surplus != rhs_surplus) return lhs_surplus > rhs_surplus;
  const int la = lhs.accept_count(), ra = rhs.accept_count();
  if (la != ra) return la < ra;
  for (size_t b = 0; b < lhs.accepted.size(); ++b) {
    if (lhs.accepted[b] != rhs.accepted[b]) return lhs.accepted[b] == 0;
  }
  return false;
}

std::optional<Money> upper_bound(const Instance& inst,
                                 const InstanceCurves& curves,
                                 const PartialAssignment& partial) {
  const int T = inst.num_periods();
  std::vector<Quantity> net(T, 0.0);
  std::vector<std::vector<std::pair<double, Quantity>>> steps_s(T), steps_d(T);
  Money fixed_money = 0.0;
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    const BlockBid& blk = inst.blocks[b];
    if (partial[b] == 0) continue;
    if (partial[b] == 1) {
      for (const auto& [t, q] : blk.quantities) {
        net[t] += q;
        fixed_money += q * blk.price;
      }
    } else {
      for (const auto& [t, q] : blk.quantities) {
        if (q == 0.0) continue;
        (q < 0.0 ? steps_s : steps_d)[t].emplace_back(blk.price, q);
      }
    }
  }

  Money total = fixed_money;
  for (int t = 0; t < T; ++t) {
    const AggregatedCurve s = steps_s[t].empty()
                                  ? curves.supply[t]
                                  : insert_steps(curves.supply[t], steps_s[t]);
    const AggregatedCurve d = steps_d[t].empty()
                                  ? curves.demand[t]
                                  : insert_steps(curves.demand[t], steps_d[t]);
    auto point = intersect(s, d, net[t]);
    if (!point) return std::nullopt;
    total += hourly_objective(s, d, point->supply_x, point->demand_x);
  }
  return total;
}

std::optional<Money> upper_bound(const Instance& inst,
                                 const PartialAssignment& partial) {
  return upper_bound(inst, InstanceCurves::build(inst), partial);
}

Solution assemble_solution(const Instance& inst, const InstanceCurves& curves,
                           Rule rule, SolveStatus status,
                           const Evaluation& eval,
                           const std::vector<double>& prices, Money bound,
                           long long nodes, double wall_time_s) {
  Solution sol;
  sol.rule = rule;
  sol.status = status;
  sol.has_incumbent = true;
  sol.assignment = eval.assignment;
  sol.prices = prices;
  sol.evaluation = eval;
  finalize_at_prices(inst, curves, sol.evaluation, prices);
  sol.total_surplus = eval.total_surplus;
  sol.bound = bound;
  sol.gap = std::max(0.0, bound - eval.total_surplus);
  sol.nodes_explored = nodes;
  sol.wall_time_s = wall_time_s;
  sol.cap_binding = cap_binding(inst.bounds, prices);
  const std::vector<BlockStatus> status_by_block =
      classify_blocks(inst, eval.assignment, prices);
  sol.blocks.resize(inst.blocks.size());
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    sol.blocks[b] = {inst.blocks[b].id, status_by_block[b].accepted,
                     status_by_block[b].surplus, status_by_block[b].cls,
                     status_by_block[b].moneyness};
  }
  return sol;
}

namespace {

struct Incumbent {
  bool valid = false;
  Money ts = -kInf;
  Assignment assignment;
  Evaluation eval;
  std::vector<double> prices;
};

struct Node {
  PartialAssignment state;
  double bound = 0.0;
  int depth = 0;
  long long id = 0;
};

struct NodeOrder {
  // priority_queue keeps the "largest" on top: highest bound, then deepest,
  // then oldest id.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class Search {
 public:
  Search(const Instance& inst, Rule rule, const SolveParams& params)
      : inst_(inst),
        rule_(rule),
        params_(params),
        curves_(InstanceCurves::build(inst)),
        t0_(Clock::now()) {
    const size_t nb = inst.blocks.size();
    branch_order_.resize(nb);
    for (size_t b = 0; b < nb; ++b) branch_order_[b] = static_cast<int>(b);
    std::vector<double> volume(nb);
    for (size_t b = 0; b < nb; ++b) volume[b] = inst.blocks[b].total_volume();
    std::stable_sort(branch_order_.begin(), branch_order_.end(),
                     [&](int a, int b) { return volume[a] > volume[b]; });
  }

  Solution run() {
    const int nb = static_cast<int>(inst_.blocks.size());
    seed_incumbents();

    PartialAssignment root(nb, -1);
    auto root_bound = upper_bound(inst_, curves_, root);
    if (!root_bound) return infeasible_solution();

    if (nb == 0) {
      // No binaries: the root relaxation is the exact (unique) clearing.
      return finish(*root_bound);
    }

    pq_.push({std::move(root), *root_bound, 0, next_id_++});
    while (!pq_.empty()) {
      if (seconds_since(t0_) > params_.time_limit_s) return timed_out();
      if (params_.node_limit && nodes_ >= *params_.node_limit)
        return timed_out();

      Node node = pq_.top();
      pq_.pop();
      ++nodes_;
      if (inc_.valid && should_prune(node.bound)) {
        residual_bound_ = std::max(residual_bound_, node.bound);
        continue;
      }
      branch(node);
    }
    return finish(std::max(residual_bound_, inc_.valid ? inc_.ts : -kInf));
  }

 private:
  bool should_prune(double bound) const {
    if (params_.absolute_gap > 0.0)
      return bound <= inc_.ts + params_.absolute_gap;
    return bound < inc_.ts - tie_margin(inc_.ts);
  }

  void consider_leaf(const Assignment& assignment) {
    auto eval = evaluate_assignment(inst_, curves_, assignment);
    if (!eval) return;
    auto prices = select_prices(inst_, *eval, rule_);
    if (!prices) return;
    if (!inc_.valid || incumbent_better(eval->total_surplus, assignment,
                                        inc_.ts, inc_.assignment)) {
      inc_.valid = true;
      inc_.ts = eval->total_surplus;
      inc_.assignment = assignment;
      inc_.eval = std::move(*eval);
      inc_.prices = std::move(*prices);
    }
  }

  // Cheap primal start: reject-all and accept-all, plus a greedy dive that
  // accepts the most in-the-money block one at a time. Keeps the best
  // rule-feasible candidate seen.
  void seed_incumbents() {
    const int nb = static_cast<int>(inst_.blocks.size());
    consider_leaf(Assignment::all(nb, false));
    if (nb == 0) return;
    consider_leaf(Assignment::all(nb, true));

    Assignment a = Assignment::all(nb, false);
    for (int iter = 0; iter < nb; ++iter) {
      auto eval = evaluate_assignment(inst_, curves_, a);
      if (!eval) break;
      std::vector<double> mids(inst_.num_periods());
      for (int t = 0; t < inst_.num_periods(); ++t)
        mids[t] = eval->periods[t].point.mid();
      int best = -1;
      Money best_surplus = 0.0;
      for (int b = 0; b < nb; ++b) {
        if (a.accepts(b)) continue;
        const Money s = block_surplus(inst_.blocks[b], mids);
        if (s > best_surplus) {
          best_surplus = s;
          best = b;
        }
      }
      if (best < 0) break;
      a.accepted[best] = 1;
      consider_leaf(a);
    }
  }

  int pick_branch_block(const PartialAssignment& state) const {
    for (int b : branch_order_)
      if (state[b] == -1) return b;
    return -1;
  }

  // Necessary-condition prune: a box containing every completion's
  // selected prices; a fixed-accepted block out-of-the-money everywhere in
  // the box can never satisfy R2 (symmetric for R3).
  bool rule_prunes(const PartialAssignment& state) {
    if (rule_ == Rule::R1) return false;
    const int8_t fixed_side = rule_ == Rule::R2 ? 1 : 0;
    bool any = false;
    for (size_t b = 0; b < state.size(); ++b) any |= state[b] == fixed_side;
    if (!any) return false;

    const int T = inst_.num_periods();
    std::vector<Quantity> nb_lo(T, 0.0), nb_hi(T, 0.0);
    for (size_t b = 0; b < state.size(); ++b) {
      const BlockBid& blk = inst_.blocks[b];
      for (const auto& [t, q] : blk.quantities) {
        if (state[b] == 1) {
          nb_lo[t] += q;
          nb_hi[t] += q;
        } else if (state[b] == -1) {
          (q < 0.0 ? nb_lo : nb_hi)[t] += q;
        }
      }
    }
    std::vector<double> box_lo(T), box_hi(T);
    for (int t = 0; t < T; ++t) {
      auto lo = intersect(curves_.supply[t], curves_.demand[t], nb_lo[t]);
      auto hi = intersect(curves_.supply[t], curves_.demand[t], nb_hi[t]);
      box_lo[t] = lo ? lo->p_lo : inst_.bounds.p_min;
      box_hi[t] = hi ? hi->p_hi : inst_.bounds.p_max;
    }
    for (size_t b = 0; b < state.size(); ++b) {
      if (state[b] != fixed_side) continue;
      const BlockBid& blk = inst_.blocks[b];
      const Money eps = block_surplus_eps(blk, inst_.bounds);
      if (rule_ == Rule::R2) {
        Money best = 0.0;  // max surplus over the box
        for (const auto& [t, q] : blk.quantities)
          best += q * (blk.price - (q > 0.0 ? box_lo[t] : box_hi[t]));
        if (best < -eps) return true;
      } else {
        Money worst = 0.0;  // min surplus over the box
        for (const auto& [t, q] : blk.quantities)
          worst += q * (blk.price - (q > 0.0 ? box_hi[t] : box_lo[t]));
        if (worst > eps) return true;
      }
    }
    return false;
  }

  void branch(const Node& node) {
    const int block = pick_branch_block(node.state);
    for (int8_t value : {int8_t{1}, int8_t{0}}) {
      PartialAssignment child = node.state;
      child[block] = value;
      if (pick_branch_block(child) < 0) {
        Assignment leaf;
        leaf.accepted.assign(child.begin(), child.end());
        ++nodes_;
        consider_leaf(leaf);
        continue;
      }
      auto bound = upper_bound(inst_, curves_, child);
      if (!bound) continue;  // no completion balances
      const double b = std::min(*bound, node.bound);
      if (inc_.valid && should_prune(b)) {
        residual_bound_ = std::max(residual_bound_, b);
        continue;
      }
      if (rule_prunes(child)) continue;  // no completion satisfies the rule
      pq_.push({std::move(child), b, node.depth + 1, next_id_++});
    }
  }

  Solution infeasible_solution() {
    Solution sol;
    sol.rule = rule_;
    sol.status = SolveStatus::Infeasible;
    sol.has_incumbent = false;
    sol.gap = kInf;
    sol.bound = -kInf;
    sol.nodes_explored = nodes_;
    sol.wall_time_s = seconds_since(t0_);
    return sol;
  }

  Solution finish(Money bound) {
    if (!inc_.valid) return infeasible_solution();
    const Money final_bound = std::max(bound, inc_.ts);
    const Money gap = final_bound - inc_.ts;
    const SolveStatus status = gap <= tie_margin(inc_.ts)
                                   ? SolveStatus::Optimal
                                   : SolveStatus::GapReached;
    return assemble_solution(inst_, curves_, rule_, status, inc_.eval,
                             inc_.prices, final_bound, nodes_,
                             seconds_since(t0_));
  }

  Solution timed_out() {
    Money open_bound = residual_bound_;
    if (!pq_.empty()) open_bound = std::max(open_bound, pq_.top().bound);
    if (!inc_.valid) {
      Solution sol = infeasible_solution();
      sol.status = SolveStatus::TimeLimit;
      sol.bound = open_bound;
      return sol;
    }
    Solution sol = assemble_solution(
        inst_, curves_, rule_, SolveStatus::TimeLimit, inc_.eval, inc_.prices,
        std::max(open_bound, inc_.ts), nodes_, seconds_since(t0_));
    return sol;
  }

  const Instance& inst_;
  Rule rule_;
  SolveParams params_;
  InstanceCurves curves_;
  Clock::time_point t0_;
  std::vector<int> branch_order_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> pq_;
  Incumbent inc_;
  long long nodes_ = 0;
  long long next_id_ = 0;
  Money residual_bound_ = -kInf;
};

}  // namespace

Solution solve(const Instance& inst, Rule rule, const SolveParams& params) {
  Search search(inst, rule, params);
  return search.run();
}

}  // namespace mcbench
