#pragma once

// Independent numeric surplus oracle. Works directly on raw segment lists
// (never through AggregatedCurve): cumulative quantities by direct
// summation, and the inverse-curve integral evaluated piecewise between
// the segments' own breakpoint prices, where the curves are linear.

#include <algorithm>
#include <cmath>
#include <vector>

#include "mcbench/types.hpp"

namespace mcbench::testing {

// Signed cumulative quantity at price p straight from the segments.
// Steps located exactly at p count fully iff include_at_steps.
inline double raw_quantity(const std::vector<Segment>& segments, double p,
                           bool include_at_steps = true) {
  double q = 0.0;
  for (const Segment& s : segments) {
    double x;
    if (s.p0 == s.p1) {
      const bool supply = s.q < 0.0;
      if (supply)
        x = (include_at_steps ? p >= s.p0 : p > s.p0) ? 1.0 : 0.0;
      else
        x = (include_at_steps ? p <= s.p0 : p < s.p0) ? 1.0 : 0.0;
    } else {
      x = std::clamp((p - s.p0) / (s.p1 - s.p0), 0.0, 1.0);
    }
    q += s.q * x;
  }
  return q;
}

// Integral over volume [0, V] of the inverse curve (price of the v-th
// unit in merit order). Piecewise-exact trapezoid between breakpoints.
inline double inverse_integral(const std::vector<Segment>& segments,
                               bool supply, double V, PriceBounds bounds) {
  std::vector<double> prices = {bounds.p_min, bounds.p_max};
  for (const Segment& s : segments) {
    prices.push_back(s.p0);
    prices.push_back(s.p1);
  }
  std::sort(prices.begin(), prices.end());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
  if (!supply) std::reverse(prices.begin(), prices.end());

  // (volume, price) along the merit order; jumps appear as two points at
  // the same price.
  std::vector<std::pair<double, double>> pts;
  for (double p : prices) {
    const double before = std::fabs(raw_quantity(segments, p, !supply));
    const double after = std::fabs(raw_quantity(segments, p, supply));
    pts.emplace_back(std::min(before, after), p);
    pts.emplace_back(std::max(before, after), p);
  }

  double integral = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    const auto [v0, p0] = pts[i - 1];
    const auto [v1, p1] = pts[i];
    if (v1 <= v0) continue;
    if (v0 >= V) break;
    const double hi = std::min(v1, V);
    const double t = (hi - v0) / (v1 - v0);
    const double p_hi = p0 + (p1 - p0) * t;
    integral += 0.5 * (p0 + p_hi) * (hi - v0);
  }
  return integral;
}

// Surplus of trading the first `cleared_volume` units on both curves.
inline double quadrature_surplus(const std::vector<Segment>& supply,
                                 const std::vector<Segment>& demand,
                                 double cleared_volume, PriceBounds bounds) {
  return inverse_integral(demand, false, cleared_volume, bounds) -
         inverse_integral(supply, true, cleared_volume, bounds);
}

}  // namespace mcbench::testing
