#include "mcbench/simplex.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace mcbench {
namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau: rows m x (cols + 1), last column is the rhs. basis[i] is
// the variable index currently basic in row i. The objective row is kept
// separately as reduced costs plus the (negated) objective value.
struct Tableau {
  int m = 0, cols = 0;
  int entering_limit = 0;  // columns >= limit (artificials) never enter
  std::vector<double> a;   // m * (cols + 1)
  std::vector<int> basis;  // size m
  std::vector<double> z;   // reduced costs, size cols
  double obj = 0.0;

  double& at(int r, int c) { return a[r * (cols + 1) + c]; }
  double rhs(int r) const { return a[r * (cols + 1) + cols]; }
  double& rhs_ref(int r) { return a[r * (cols + 1) + cols]; }

  void pivot(int pr, int pc) {
    const double piv = at(pr, pc);
    for (int c = 0; c <= cols; ++c) at(pr, c) /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    const double zf = z[pc];
    if (zf != 0.0) {
      for (int c = 0; c < cols; ++c) z[c] -= zf * at(pr, c);
      obj -= zf * rhs(pr);
      z[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index improving column; leaving = min
  // ratio with lowest basis index tie-break. Returns false when optimal,
  // throws nothing; sets *unbounded when no leaving row exists.
  bool iterate(bool* unbounded) {
    int pc = -1;
    for (int c = 0; c < entering_limit; ++c) {
      if (z[c] < -kPivotEps) {
        pc = c;
        break;
      }
    }
    if (pc < 0) return false;
    int pr = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double arc = at(r, pc);
      if (arc <= kPivotEps) continue;
      const double ratio = rhs(r) / arc;
      if (ratio < best - kPivotEps ||
          (ratio < best + kPivotEps && (pr < 0 || basis[r] < basis[pr]))) {
        best = ratio;
        pr = r;
      }
    }
    if (pr < 0) {
      *unbounded = true;
      return false;
    }
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpRow>& rows) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(rows.size());

  // Column layout: structural | slack/surplus | artificial.
  int n_slack = 0;
  for (const LpRow& r : rows)
    if (r.relation != LpRelation::Equal) ++n_slack;

  Tableau t;
  t.m = m;
  t.cols = n + n_slack + m;  // worst case one artificial per row
  t.a.assign(static_cast<size_t>(m) * (t.cols + 1), 0.0);
  t.basis.assign(m, -1);

  double scale = 1.0;
  int slack_i = 0, art_count = 0;
  std::vector<int> art_cols;
  for (int r = 0; r < m; ++r) {
    const LpRow& row = rows[r];
    assert(static_cast<int>(row.coeffs.size()) == n);
    double sign = 1.0;
    LpRelation rel = row.relation;
    double rhs = row.rhs;
    if (rhs < 0.0) {  // normalize to nonnegative rhs
      sign = -1.0;
      rhs = -rhs;
      if (rel == LpRelation::LessEq)
        rel = LpRelation::GreaterEq;
      else if (rel == LpRelation::GreaterEq)
        rel = LpRelation::LessEq;
    }
    for (int c = 0; c < n; ++c) {
      t.at(r, c) = sign * row.coeffs[c];
      scale = std::max(scale, std::fabs(row.coeffs[c]));
    }
    t.rhs_ref(r) = rhs;
    scale = std::max(scale, rhs);
    if (rel == LpRelation::LessEq) {
      t.at(r, n + slack_i) = 1.0;
      t.basis[r] = n + slack_i;
      ++slack_i;
    } else {
      if (rel == LpRelation::GreaterEq) {
        t.at(r, n + slack_i) = -1.0;
        ++slack_i;
      }
      const int art = n + n_slack + art_count++;
      t.at(r, art) = 1.0;
      t.basis[r] = art;
      art_cols.push_back(art);
    }
  }

  LpResult result;
  t.entering_limit = n + n_slack;

  // Phase 1: minimize the sum of artificials.
  if (art_count > 0) {
    t.z.assign(t.cols, 0.0);
    t.obj = 0.0;
    for (int c : art_cols) t.z[c] = 1.0;
    for (int r = 0; r < m; ++r) {
      if (t.at(r, t.basis[r]) != 0.0 && t.z[t.basis[r]] != 0.0) {
        for (int c = 0; c < t.cols; ++c) t.z[c] -= t.at(r, c);
        t.obj -= t.rhs(r);
      }
    }
    bool unbounded = false;
    while (t.iterate(&unbounded)) {
    }
    if (-t.obj > 1e-9 * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive leftover artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < n + n_slack) continue;
      int pc = -1;
      for (int c = 0; c < n + n_slack; ++c) {
        if (std::fabs(t.at(r, c)) > kPivotEps) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) t.pivot(r, pc);
      // else: redundant row, harmless to leave the artificial at zero.
    }
  }

  // Phase 2: minimize the real objective. Artificial columns keep cost 0
  // and are banned from entering; any still basic sit in redundant rows
  // at level zero.
  t.z.assign(t.cols, 0.0);
  t.obj = 0.0;
  for (int c = 0; c < n; ++c) t.z[c] = objective[c];
  for (int r = 0; r < m; ++r) {
    const double zb = t.z[t.basis[r]];
    if (zb != 0.0) {
      for (int c = 0; c < t.cols; ++c) t.z[c] -= zb * t.at(r, c);
      t.obj -= zb * t.rhs(r);
      t.z[t.basis[r]] = 0.0;
    }
  }
  bool unbounded = false;
  while (t.iterate(&unbounded)) {
  }
  if (unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < n) result.x[t.basis[r]] = t.rhs(r);
  result.objective = 0.0;
  for (int c = 0; c < n; ++c) result.objective += objective[c] * result.x[c];
  return result;
}

}  // namespace mcbench
