#pragma once

#include <vector>

namespace mcbench {

// Minimal dense LP solver for the small feasibility/selection problems in
// price selection: minimize c.x subject to row constraints, x >= 0.
// Two-phase primal simplex with Bland's rule, so runs are deterministic
// and cycle-free. Intended for problems with at most a few hundred rows.

enum class LpRelation { LessEq, GreaterEq, Equal };

struct LpRow {
  std::vector<double> coeffs;
  LpRelation relation = LpRelation::LessEq;
  double rhs = 0.0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpRow>& rows);

}  // namespace mcbench
