#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mcbench/types.hpp"

namespace mcbench {

// Absolute tolerance contract on prices.
inline constexpr double kPriceEps = 1e-9;

// One merged segment of an aggregated curve. Spans tile [p_min, p_max]
// contiguously in ascending price order; a jump (step) has p_lo == p_hi.
// `q` is the signed quantity released across the span; `cum_lo`/`cum_hi`
// are the curve's cumulative signed quantity at the two price edges
// (cumulative is non-increasing in price for both directions).
struct Span {
  double p_lo = 0.0;
  double p_hi = 0.0;
  Quantity q = 0.0;
  Quantity cum_lo = 0.0;
  Quantity cum_hi = 0.0;

  double width() const { return p_hi - p_lo; }
  bool is_jump() const { return p_lo == p_hi; }
};

// Per-period aggregated cumulative quantity-vs-price curve for one
// direction. Supply fills from low prices up (initial segment price is
// p_lo), demand from high prices down (initial price is p_hi).
class AggregatedCurve {
 public:
  AggregatedCurve() = default;
  AggregatedCurve(Direction direction, PriceBounds bounds,
                  std::vector<Span> spans)
      : direction_(direction), bounds_(bounds), spans_(std::move(spans)) {}

  Direction direction() const { return direction_; }
  const PriceBounds& bounds() const { return bounds_; }
  const std::vector<Span>& spans() const { return spans_; }

  // Segment-form initial/final price of a span (direction-aware).
  double seg_p0(const Span& s) const {
    return direction_ == Direction::Supply ? s.p_lo : s.p_hi;
  }
  double seg_p1(const Span& s) const {
    return direction_ == Direction::Supply ? s.p_hi : s.p_lo;
  }

  // Cumulative value at price p with the jumps located exactly at p left
  // unfilled (cum_before) or fully filled (cum_after). cum_before >=
  // cum_after; they differ only at jump prices.
  Quantity cum_before(double p) const;
  Quantity cum_after(double p) const;

  // Total signed curve quantity (cumulative at full acceptance).
  Quantity total_quantity() const;

 private:
  Direction direction_ = Direction::Supply;
  PriceBounds bounds_{};
  std::vector<Span> spans_;
};

// Merges hourly segments into a continuous monotone curve spanning exactly
// [p_min, p_max]. Segments with identical price spans are summed (and later
// cleared pro-rata); zero-quantity segments are dropped; gaps and the range
// ends are padded with zero-quantity spans.
AggregatedCurve aggregate(const std::vector<Segment>& segments,
                          Direction direction, PriceBounds bounds);

// Signed cumulative quantity at price p. At a jump price returns the
// fill-order extreme that counts the at-the-money step fully. Throws
// std::out_of_range if p is outside [p_min, p_max].
Quantity quantity_at_price(const AggregatedCurve& curve, double p);

// Returns a copy of `curve` with extra step quantities merged in (used by
// the solver relaxation, which treats undecided blocks as divisible steps
// at their bid price). Steps must carry the curve's quantity sign.
AggregatedCurve insert_steps(const AggregatedCurve& curve,
                             std::vector<std::pair<double, Quantity>> steps);

// Result of balancing one period at a fixed net block quantity.
struct ClearingPoint {
  double p_lo = 0.0;  // feasible clearing price interval
  double p_hi = 0.0;
  Quantity quantity = 0.0;  // cleared hourly demand volume (mid convention)
  std::vector<double> supply_x;  // fractions per supply span, fill-ordered
  std::vector<double> demand_x;  // fractions per demand span
  bool touches_min = false;  // interval endpoint sits on a price cap
  bool touches_max = false;

  bool degenerate() const { return p_hi - p_lo <= kPriceEps; }
  double mid() const { return 0.5 * (p_lo + p_hi); }
};

// Finds all prices where demand + supply + net_block_q balances to zero.
// Returns the (possibly degenerate) price interval with mid-convention
// fractions, or nullopt when the balance cannot be met at any price (net
// block quantity exceeds what the curves can absorb).
std::optional<ClearingPoint> intersect(const AggregatedCurve& supply,
                                       const AggregatedCurve& demand,
                                       Quantity net_block_q);

// Fractions for both curves at clearing price p, filling in merit order;
// jumps located exactly at p absorb the residual balance (mid-range
// convention). `p` must lie inside the feasible interval for the balance
// to close. Overwrites supply_x/demand_x/quantity of `point` in place.
void fill_at_price(const AggregatedCurve& supply, const AggregatedCurve& demand,
                   Quantity net_block_q, double p, ClearingPoint& point);

// Quadratic surplus of one period at the given span fractions:
// sum of q*p0*x + q*(p1-p0)*x^2/2 over both curves.
Money hourly_objective(const AggregatedCurve& supply,
                       const AggregatedCurve& demand,
                       const std::vector<double>& supply_x,
                       const std::vector<double>& demand_x);

// Price implied by a fraction vector: p_min + sum (p1-p0)*x for supply,
// p_max + sum (p1-p0)*x for demand. Equals the clearing price whenever the
// fractions came from fill_at_price on curves spanning [p_min, p_max].
double reconstruct_price(const AggregatedCurve& curve,
                         const std::vector<double>& fractions);

// Signed balance residual q_supply + q_demand + net_block_q at fractions.
Quantity balance_residual(const AggregatedCurve& supply,
                          const AggregatedCurve& demand,
                          const std::vector<double>& supply_x,
                          const std::vector<double>& demand_x,
                          Quantity net_block_q);

}  // namespace mcbench
