#include "mcbench/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcbench {
namespace {

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Quantity-scale epsilon for balance feasibility decisions.
double quantity_eps(const AggregatedCurve& s, const AggregatedCurve& d,
                    Quantity nb) {
  const double scale =
      std::fabs(s.total_quantity()) + d.total_quantity() + std::fabs(nb);
  return 1e-12 * (1.0 + scale);
}

}  // namespace

Quantity AggregatedCurve::cum_before(double p) const {
  // First span whose high edge reaches p; everything to its left is done.
  auto it = std::partition_point(
      spans_.begin(), spans_.end(),
      [p](const Span& s) { return s.p_hi < p; });
  if (it == spans_.end()) return spans_.empty() ? 0.0 : spans_.back().cum_hi;
  if (it->p_lo >= p) return it->cum_lo;  // at the left edge; jumps unfilled
  const double t = (p - it->p_lo) / it->width();
  return it->cum_lo + (it->cum_hi - it->cum_lo) * t;
}

Quantity AggregatedCurve::cum_after(double p) const {
  // Last span starting at or before p; includes all jumps located at p.
  auto it = std::partition_point(
      spans_.begin(), spans_.end(),
      [p](const Span& s) { return s.p_lo <= p; });
  if (it == spans_.begin()) return spans_.empty() ? 0.0 : spans_.front().cum_lo;
  --it;
  if (it->p_hi <= p) return it->cum_hi;
  const double t = (p - it->p_lo) / it->width();
  return it->cum_lo + (it->cum_hi - it->cum_lo) * t;
}

Quantity AggregatedCurve::total_quantity() const {
  Quantity q = 0.0;
  for (const Span& s : spans_) q += s.q;
  return q;
}

AggregatedCurve aggregate(const std::vector<Segment>& segments,
                          Direction direction, PriceBounds bounds) {
  struct Ramp {
    double lo, hi;
    double rate;  // signed quantity per unit price
  };
  std::vector<Ramp> ramps;
  std::vector<std::pair<double, Quantity>> steps;  // price -> summed q
  std::vector<double> breaks = {bounds.p_min, bounds.p_max};

  for (const Segment& s : segments) {
    if (s.q == 0.0) continue;
    const double lo = std::min(s.p0, s.p1);
    const double hi = std::max(s.p0, s.p1);
    breaks.push_back(lo);
    breaks.push_back(hi);
    if (lo == hi) {
      steps.emplace_back(lo, s.q);
    } else {
      ramps.push_back({lo, hi, s.q / (hi - lo)});
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::sort(steps.begin(), steps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Span> spans;
  size_t step_i = 0;
  for (size_t i = 0; i < breaks.size(); ++i) {
    const double p = breaks[i];
    Quantity jump_q = 0.0;
    while (step_i < steps.size() && steps[step_i].first == p)
      jump_q += steps[step_i++].second;
    if (jump_q != 0.0) spans.push_back({p, p, jump_q, 0.0, 0.0});
    if (i + 1 < breaks.size()) {
      const double p2 = breaks[i + 1];
      double rate = 0.0;
      for (const Ramp& r : ramps)
        if (r.lo <= p && r.hi >= p2) rate += r.rate;
      spans.push_back({p, p2, rate * (p2 - p), 0.0, 0.0});
    }
  }

  // Chain cumulative values: supply runs 0 -> total, demand total -> 0,
  // both non-increasing in price.
  Quantity total = 0.0;
  for (const Span& s : spans) total += s.q;
  Quantity cum = direction == Direction::Supply ? 0.0 : total;
  for (Span& s : spans) {
    s.cum_lo = cum;
    cum += direction == Direction::Supply ? s.q : -s.q;
    s.cum_hi = cum;
  }
  return AggregatedCurve(direction, bounds, std::move(spans));
}

AggregatedCurve insert_steps(const AggregatedCurve& curve,
                             std::vector<std::pair<double, Quantity>> steps) {
  std::sort(steps.begin(), steps.end());
  std::vector<Span> spans;
  spans.reserve(curve.spans().size() + steps.size() * 2);
  size_t k = 0;
  auto flush_steps_at = [&](double p) {
    Quantity q = 0.0;
    while (k < steps.size() && steps[k].first == p) q += steps[k++].second;
    if (q == 0.0) return;
    if (!spans.empty() && spans.back().is_jump() && spans.back().p_lo == p)
      spans.back().q += q;
    else
      spans.push_back({p, p, q, 0.0, 0.0});
  };
  for (const Span& s : curve.spans()) {
    flush_steps_at(s.p_lo);
    if (s.is_jump()) {
      if (!spans.empty() && spans.back().is_jump() &&
          spans.back().p_lo == s.p_lo)
        spans.back().q += s.q;
      else
        spans.push_back(s);
      continue;
    }
    Span rest = s;
    // Split the ramp wherever a step lands strictly inside it.
    while (k < steps.size() && steps[k].first < rest.p_hi) {
      const double p = steps[k].first;
      const double t = (p - rest.p_lo) / rest.width();
      spans.push_back({rest.p_lo, p, rest.q * t, 0.0, 0.0});
      rest.q *= 1.0 - t;
      rest.p_lo = p;
      flush_steps_at(p);
    }
    spans.push_back(rest);
  }
  flush_steps_at(curve.bounds().p_max);

  Quantity total = 0.0;
  for (const Span& s : spans) total += s.q;
  Quantity cum = curve.direction() == Direction::Supply ? 0.0 : total;
  for (Span& s : spans) {
    s.cum_lo = cum;
    cum += curve.direction() == Direction::Supply ? s.q : -s.q;
    s.cum_hi = cum;
  }
  return AggregatedCurve(curve.direction(), curve.bounds(), std::move(spans));
}

Quantity quantity_at_price(const AggregatedCurve& curve, double p) {
  const PriceBounds& b = curve.bounds();
  if (p < b.p_min || p > b.p_max)
    throw std::out_of_range("price outside [p_min, p_max]");
  // Fill-order extreme: count at-the-money steps fully. For supply that is
  // the post-jump value, for demand the pre-jump value.
  return curve.direction() == Direction::Supply ? curve.cum_after(p)
                                                : curve.cum_before(p);
}

void fill_at_price(const AggregatedCurve& supply, const AggregatedCurve& demand,
                   Quantity net_block_q, double p, ClearingPoint& point) {
  const AggregatedCurve* curves[2] = {&supply, &demand};
  std::vector<double>* fracs[2] = {&point.supply_x, &point.demand_x};

  Quantity base = net_block_q;
  Quantity jump_cap[2] = {0.0, 0.0};  // summed |q| of jumps located at p
  for (int c = 0; c < 2; ++c) {
    const auto& spans = curves[c]->spans();
    fracs[c]->assign(spans.size(), 0.0);
    for (size_t i = 0; i < spans.size(); ++i) {
      const Span& s = spans[i];
      double x;
      if (s.is_jump()) {
        if (std::fabs(s.p_lo - p) <= kPriceEps) {
          jump_cap[c] += std::fabs(s.q);
          continue;  // resolved below
        }
        const bool in_money = c == 0 ? s.p_lo < p : s.p_lo > p;
        x = in_money ? 1.0 : 0.0;
      } else if (c == 0) {
        x = clamp01((p - s.p_lo) / s.width());
      } else {
        x = clamp01((s.p_hi - p) / s.width());
      }
      (*fracs[c])[i] = x;
      base += s.q * x;
    }
  }

  // Distribute the residual over at-the-money jumps: accepted demand a and
  // accepted supply magnitude b must satisfy base + a - b = 0 with
  // a in [0, jump_cap[1]], b in [0, jump_cap[0]]. Mid-range convention.
  const double a_lo = std::max(0.0, -base);
  const double a_hi = std::min(jump_cap[1], jump_cap[0] - base);
  double a = 0.0, bq = 0.0;
  if (a_hi >= a_lo) {
    a = 0.5 * (a_lo + a_hi);
    bq = a + base;
  } else {
    // p outside the feasible interval; clamp to the closest fill.
    a = std::clamp(-base, 0.0, jump_cap[1]);
    bq = std::clamp(a + base, 0.0, jump_cap[0]);
  }
  for (int c = 0; c < 2; ++c) {
    if (jump_cap[c] == 0.0) continue;
    const double take = c == 0 ? bq : a;
    const auto& spans = curves[c]->spans();
    for (size_t i = 0; i < spans.size(); ++i) {
      const Span& s = spans[i];
      if (s.is_jump() && std::fabs(s.p_lo - p) <= kPriceEps)
        (*fracs[c])[i] = clamp01(take / jump_cap[c]);
    }
  }

  // Exact-balance polish: push any leftover rounding into the largest
  // marginal ramp. The shift is O(1e-15) of scale, far below the 1e-9
  // reconstruction contract.
  Quantity r = balance_residual(supply, demand, point.supply_x,
                                point.demand_x, net_block_q);
  if (r != 0.0) {
    int best_c = -1;
    size_t best_i = 0;
    double best_q = 0.0;
    for (int c = 0; c < 2; ++c) {
      const auto& spans = curves[c]->spans();
      for (size_t i = 0; i < spans.size(); ++i) {
        const Span& s = spans[i];
        if (!s.is_jump() && s.p_lo < p && p < s.p_hi &&
            std::fabs(s.q) > std::fabs(best_q)) {
          best_c = c;
          best_i = i;
          best_q = s.q;
        }
      }
    }
    if (best_c >= 0) {
      double& x = (*fracs[best_c])[best_i];
      x = clamp01(x - r / best_q);
    }
  }

  point.quantity = 0.0;
  const auto& dspans = demand.spans();
  for (size_t i = 0; i < dspans.size(); ++i)
    point.quantity += dspans[i].q * point.demand_x[i];
}

std::optional<ClearingPoint> intersect(const AggregatedCurve& supply,
                                       const AggregatedCurve& demand,
                                       Quantity net_block_q) {
  std::vector<double> breaks;
  breaks.reserve(supply.spans().size() + demand.spans().size() + 2);
  for (const Span& s : supply.spans()) {
    breaks.push_back(s.p_lo);
    breaks.push_back(s.p_hi);
  }
  for (const Span& s : demand.spans()) {
    breaks.push_back(s.p_lo);
    breaks.push_back(s.p_hi);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const size_t n = breaks.size();

  // Net quantity path: at each breakpoint the achievable net drops from
  // n_top (at-price jumps unfilled) to n_bot (filled); linear between
  // breakpoints. Monotone non-increasing along the whole path.
  std::vector<double> n_top(n), n_bot(n);
  for (size_t i = 0; i < n; ++i) {
    const double p = breaks[i];
    n_top[i] = supply.cum_before(p) + demand.cum_before(p) + net_block_q;
    n_bot[i] = supply.cum_after(p) + demand.cum_after(p) + net_block_q;
  }

  const double qeps = quantity_eps(supply, demand, net_block_q);
  if (n_top.front() < -qeps || n_bot.back() > qeps) return std::nullopt;

  ClearingPoint point;
  // Lowest price where the path reaches zero.
  size_t i = 0;
  while (i < n && n_bot[i] > 0.0) ++i;
  if (i >= n) {
    point.p_lo = breaks.back();  // path stays barely above zero; cap case
  } else if (n_top[i] >= 0.0 || i == 0) {
    point.p_lo = breaks[i];
  } else {
    const double num = n_bot[i - 1];
    const double den = n_bot[i - 1] - n_top[i];
    const double t = den > 0.0 ? num / den : 0.0;
    point.p_lo = breaks[i - 1] + (breaks[i] - breaks[i - 1]) * t;
  }
  // Highest price where the path is still at or above zero.
  size_t j = n;
  while (j > 0 && n_top[j - 1] < 0.0) --j;
  if (j == 0) {
    point.p_hi = breaks.front();
  } else if (n_bot[j - 1] <= 0.0 || j == n) {
    point.p_hi = breaks[j - 1];
  } else {
    const double num = n_bot[j - 1];
    const double den = n_bot[j - 1] - n_top[j];
    const double t = den > 0.0 ? num / den : 0.0;
    point.p_hi = breaks[j - 1] + (breaks[j] - breaks[j - 1]) * t;
  }

  const PriceBounds& b = supply.bounds();
  point.p_lo = std::clamp(point.p_lo, b.p_min, b.p_max);
  point.p_hi = std::clamp(point.p_hi, std::min(point.p_lo, b.p_max), b.p_max);
  const double cap_eps = kPriceEps * (1.0 + b.span());
  point.touches_min = point.p_lo <= b.p_min + cap_eps;
  point.touches_max = point.p_hi >= b.p_max - cap_eps;

  fill_at_price(supply, demand, net_block_q, point.mid(), point);
  return point;
}

Money hourly_objective(const AggregatedCurve& supply,
                       const AggregatedCurve& demand,
                       const std::vector<double>& supply_x,
                       const std::vector<double>& demand_x) {
  Money total = 0.0;
  const AggregatedCurve* curves[2] = {&supply, &demand};
  const std::vector<double>* fracs[2] = {&supply_x, &demand_x};
  for (int c = 0; c < 2; ++c) {
    const auto& spans = curves[c]->spans();
    for (size_t i = 0; i < spans.size(); ++i) {
      const Span& s = spans[i];
      const double x = (*fracs[c])[i];
      const double p0 = curves[c]->seg_p0(s);
      const double p1 = curves[c]->seg_p1(s);
      total += s.q * p0 * x + s.q * (p1 - p0) * 0.5 * x * x;
    }
  }
  return total;
}

double reconstruct_price(const AggregatedCurve& curve,
                         const std::vector<double>& fractions) {
  double p = curve.direction() == Direction::Supply ? curve.bounds().p_min
                                                    : curve.bounds().p_max;
  const auto& spans = curve.spans();
  for (size_t i = 0; i < spans.size(); ++i)
    p += (curve.seg_p1(spans[i]) - curve.seg_p0(spans[i])) * fractions[i];
  return p;
}

Quantity balance_residual(const AggregatedCurve& supply,
                          const AggregatedCurve& demand,
                          const std::vector<double>& supply_x,
                          const std::vector<double>& demand_x,
                          Quantity net_block_q) {
  Quantity r = net_block_q;
  const auto& ss = supply.spans();
  for (size_t i = 0; i < ss.size(); ++i) r += ss[i].q * supply_x[i];
  const auto& ds = demand.spans();
  for (size_t i = 0; i < ds.size(); ++i) r += ds[i].q * demand_x[i];
  return r;
}

}  // namespace mcbench
