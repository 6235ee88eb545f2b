#pragma once

#include <string>

#include "mcbench/solver.hpp"

namespace mcbench {

// The per-solution performance statistics tracked by the experiments.
// mul/mulp are per-unit-energy deviations |sum_t Q_bt (P_b - p_t)| /
// sum_t |Q_bt| maximized over PABs/PRBs; mul_literal/mulp_literal are the
// unweighted price-difference variants max |sum_{active t} (P_b - p_t)|,
// which coincide with the former for single-period blocks.
struct Measures {
  Money ts = 0.0;
  double mcp = 0.0;  // daily average of clearing prices
  int n_pab = 0;
  int n_prb = 0;
  Money tl = 0.0;   // total loss incurred by PABs
  Money tlp = 0.0;  // total loss of profit missed by PRBs
  double mul = 0.0;
  double mulp = 0.0;
  Money side_payment = 0.0;  // PAB compensation, equals tl
  double mul_literal = 0.0;
  double mulp_literal = 0.0;

  double max_price_diff() const { return mul > mulp ? mul : mulp; }
};

Measures compute_measures(const Instance& instance, const Solution& solution);

// Fixed-order CSV row: instance_id, rule, ts, mcp, n_pab, n_prb, tl, tlp,
// mul, mulp, side_payment, status, gap, wall_time.
std::string measures_csv_header();
std::string measures_csv_row(const std::string& instance_id,
                             const Solution& solution,
                             const Measures& measures);

}  // namespace mcbench
