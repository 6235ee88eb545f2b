#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mcbench {

using Money = double;     // abstract currency
using Price = double;     // currency per MWh
using Quantity = double;  // MWh, signed: supply <= 0, demand >= 0

enum class Direction : uint8_t { Supply = 0, Demand = 1 };

inline const char* to_string(Direction d) {
  return d == Direction::Supply ? "supply" : "demand";
}

struct PriceBounds {
  Price p_min = 0.0;
  Price p_max = 0.0;

  double span() const { return p_max - p_min; }
  bool contains(Price p) const { return p >= p_min && p <= p_max; }
  friend bool operator==(const PriceBounds&, const PriceBounds&) = default;
};

// One hourly bid segment. The quantity ramps linearly from 0 at the initial
// price p0 to q at the final price p1. Supply: p0 <= p1, q <= 0.
// Demand: p1 <= p0, q >= 0. A step bid has p0 == p1.
struct Segment {
  Price p0 = 0.0;
  Price p1 = 0.0;
  Quantity q = 0.0;

  bool is_step() const { return p0 == p1; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// All-or-nothing bid: quantity per period at a single price. All nonzero
// quantities share one sign and cover consecutive periods.
struct BlockBid {
  std::string id;
  Price price = 0.0;
  std::map<int, Quantity> quantities;  // period -> MWh, absent means 0

  Direction direction() const {
    for (const auto& [t, q] : quantities)
      if (q < 0.0) return Direction::Supply;
    return Direction::Demand;
  }
  Quantity total_volume() const {  // sum of |Q_bt|
    Quantity v = 0.0;
    for (const auto& [t, q] : quantities) v += q < 0 ? -q : q;
    return v;
  }
  friend bool operator==(const BlockBid&, const BlockBid&) = default;
};

// A full auction day: T periods indexed 0..T-1, hourly segments per
// (period, direction) and a list of block bids. Immutable once built.
struct Instance {
  std::vector<int> periods;  // 0..T-1 in order
  PriceBounds bounds;
  // hourly[t][d] with d = static_cast<int>(Direction)
  std::vector<std::vector<std::vector<Segment>>> hourly;
  std::vector<BlockBid> blocks;

  int num_periods() const { return static_cast<int>(periods.size()); }

  const std::vector<Segment>& segments(int period, Direction d) const {
    return hourly[period][static_cast<int>(d)];
  }
  std::vector<Segment>& segments(int period, Direction d) {
    return hourly[period][static_cast<int>(d)];
  }

  static Instance empty(int num_periods, PriceBounds bounds) {
    Instance inst;
    inst.bounds = bounds;
    inst.periods.resize(num_periods);
    for (int t = 0; t < num_periods; ++t) inst.periods[t] = t;
    inst.hourly.assign(num_periods, std::vector<std::vector<Segment>>(2));
    return inst;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// One accept/reject decision per block, index-aligned with Instance::blocks.
struct Assignment {
  std::vector<uint8_t> accepted;

  bool accepts(int b) const { return accepted[b] != 0; }
  int accept_count() const {
    int n = 0;
    for (uint8_t a : accepted) n += a != 0;
    return n;
  }
  static Assignment all(size_t n, bool accept) {
    return Assignment{std::vector<uint8_t>(n, accept ? 1 : 0)};
  }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace mcbench
