#include "mcbench/oracle.hpp"

#include <chrono>
#include <string>

namespace mcbench {

Solution enumerate_assignments(const Instance& inst, Rule rule, int cap) {
  const int nb = static_cast<int>(inst.blocks.size());
  if (nb > cap)
    throw OracleCapExceeded("instance has " + std::to_string(nb) +
                            " blocks, oracle cap is " + std::to_string(cap));
  const auto t0 = std::chrono::steady_clock::now();
  const InstanceCurves curves = InstanceCurves::build(inst);

  bool found = false;
  Money best_ts = 0.0;
  Assignment best_assignment;
  Evaluation best_eval;
  std::vector<double> best_prices;

  const uint64_t count = uint64_t{1} << nb;
  for (uint64_t mask = 0; mask < count; ++mask) {
    Assignment a;
    a.accepted.resize(nb);
    for (int b = 0; b < nb; ++b) a.accepted[b] = (mask >> b) & 1u;
    auto eval = evaluate_assignment(inst, curves, a);
    if (!eval) continue;
    auto prices = select_prices(inst, *eval, rule);
    if (!prices) continue;
    if (!found || incumbent_better(eval->total_surplus, a, best_ts,
                                   best_assignment)) {
      found = true;
      best_ts = eval->total_surplus;
      best_assignment = a;
      best_eval = std::move(*eval);
      best_prices = std::move(*prices);
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!found) {
    Solution sol;
    sol.rule = rule;
    sol.status = SolveStatus::Infeasible;
    sol.has_incumbent = false;
    sol.nodes_explored = static_cast<long long>(count);
    sol.wall_time_s = wall;
    return sol;
  }
  return assemble_solution(inst, curves, rule, SolveStatus::Optimal, best_eval,
                           best_prices, best_ts,
                           static_cast<long long>(count), wall);
}

}  // namespace mcbench
