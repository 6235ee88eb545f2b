#include "mcbench/validate.hpp"

#include <cmath>
#include <sstream>

namespace mcbench {
namespace {

std::string segment_tag(int period, Direction d, const Segment& s) {
  std::ostringstream os;
  os << to_string(d) << " segment (p0=" << s.p0 << ", p1=" << s.p1
     << ", q=" << s.q << ") in period " << period;
  return os.str();
}

void check_segment(int period, Direction d, const Segment& s,
                   const PriceBounds& bounds, std::vector<Violation>& out) {
  const std::string tag = segment_tag(period, d, s);
  if (!std::isfinite(s.p0) || !std::isfinite(s.p1) || !std::isfinite(s.q)) {
    out.push_back({tag, "segment fields must be finite"});
    return;
  }
  if (d == Direction::Supply) {
    if (s.q > 0.0) out.push_back({tag, "supply quantity must be <= 0"});
    if (s.p0 > s.p1)
      out.push_back({tag, "supply segment requires p0 <= p1"});
  } else {
    if (s.q < 0.0) out.push_back({tag, "demand quantity must be >= 0"});
    if (s.p1 > s.p0)
      out.push_back({tag, "demand segment requires p1 <= p0"});
  }
  if (!bounds.contains(s.p0) || !bounds.contains(s.p1))
    out.push_back({tag, "segment prices must lie within [p_min, p_max]"});
}

void check_block(const BlockBid& b, const Instance& inst,
                 std::vector<Violation>& out) {
  const std::string tag = "block '" + b.id + "'";
  if (!std::isfinite(b.price)) {
    out.push_back({tag, "block price must be finite"});
    return;
  }
  if (!inst.bounds.contains(b.price))
    out.push_back({tag, "block price must lie within [p_min, p_max]"});

  std::vector<int> active;
  bool has_pos = false, has_neg = false;
  for (const auto& [t, q] : b.quantities) {
    if (!std::isfinite(q)) {
      out.push_back({tag, "block quantities must be finite"});
      return;
    }
    if (q == 0.0) continue;
    active.push_back(t);
    has_pos |= q > 0.0;
    has_neg |= q < 0.0;
    if (t < 0 || t >= inst.num_periods())
      out.push_back({tag, "block active period outside instance periods"});
  }
  if (active.empty()) {
    out.push_back({tag, "block has no active period"});
    return;
  }
  if (has_pos && has_neg)
    out.push_back({tag, "block quantities must share one sign"});
  for (size_t i = 1; i < active.size(); ++i) {
    if (active[i] != active[i - 1] + 1) {
      out.push_back({tag, "block active periods must be consecutive"});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;

  if (!(inst.bounds.p_min < inst.bounds.p_max))
    out.push_back({"bounds", "p_min must be strictly less than p_max"});

  for (int t = 0; t < inst.num_periods(); ++t) {
    if (inst.periods[t] != t) {
      out.push_back({"periods", "periods must be exactly 0..T-1 in order"});
      break;
    }
  }
  if (inst.hourly.size() != inst.periods.size())
    out.push_back({"hourly", "hourly bid table must cover every period"});

  const int covered =
      static_cast<int>(std::min(inst.hourly.size(), inst.periods.size()));
  for (int t = 0; t < covered; ++t) {
    for (Direction d : {Direction::Supply, Direction::Demand}) {
      for (const Segment& s : inst.hourly[t][static_cast<int>(d)])
        check_segment(t, d, s, inst.bounds, out);
    }
  }

  std::vector<std::string> seen_ids;
  for (const BlockBid& b : inst.blocks) {
    check_block(b, inst, out);
    for (const std::string& id : seen_ids) {
      if (id == b.id) {
        out.push_back({"block '" + b.id + "'", "duplicate block id"});
        break;
      }
    }
    seen_ids.push_back(b.id);
  }
  return out;
}

}  // namespace mcbench
