#include "mcbench/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcbench/json_io.hpp"
#include "mcbench/rng.hpp"

namespace mcbench {
namespace {

using nlohmann::json;

GeneratorProfile tr_profile(const char* name, int hourly, int sb, int db,
                            double share_s, double share_d, double vol_s,
                            double vol_d) {
  GeneratorProfile p;
  p.name = name;
  p.periods = 24;
  p.hourly_bid_count = hourly;
  p.supply_block_count = sb;
  p.demand_block_count = db;
  p.hourly_supply_volume_share = share_s;
  p.hourly_demand_volume_share = share_d;
  p.total_supply_volume = vol_s;
  p.total_demand_volume = vol_d;
  return p;
}

void check_profile(const GeneratorProfile& p) {
  auto fail = [&](const std::string& why) {
    throw ProfileError("profile '" + p.name + "': " + why);
  };
  if (p.periods < 1) fail("periods must be >= 1");
  if (!(p.bounds.p_min < p.bounds.p_max)) fail("p_min must be < p_max");
  if (p.supply_block_count < 0 || p.demand_block_count < 0)
    fail("block counts must be >= 0");
  if (p.total_supply_volume <= 0.0 || p.total_demand_volume <= 0.0)
    fail("total volumes must be > 0");
  for (double share :
       {p.hourly_supply_volume_share, p.hourly_demand_volume_share}) {
    if (!(share > 0.0 && share <= 1.0)) fail("volume shares must be in (0,1]");
  }
  if (p.hourly_supply_volume_share < 1.0 && p.supply_block_count == 0)
    fail("supply block volume share is nonzero but there are no supply blocks");
  if (p.hourly_demand_volume_share < 1.0 && p.demand_block_count == 0)
    fail("demand block volume share is nonzero but there are no demand blocks");
  if (p.hourly_bid_count < 2 * p.periods)
    fail("hourly_bid_count must cover every period and direction");
  if (p.block_span_min < 1 || p.block_span_max < p.block_span_min)
    fail("block span range is empty");
}

// Positive weights summing exactly to `total`.
std::vector<double> random_split(Rng& rng, int n, double total) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.2 + rng.uniform01();
    sum += w[i];
  }
  for (int i = 0; i < n; ++i) w[i] *= total / sum;
  return w;
}

}  // namespace

const std::vector<GeneratorProfile>& builtin_profiles() {
  static const std::vector<GeneratorProfile> profiles = {
      tr_profile("TR-2012", 7323, 87, 46, 0.80, 0.64, 324553.0, 388956.0),
      tr_profile("TR-2013", 8808, 107, 42, 0.80, 0.71, 392223.0, 380999.0),
      tr_profile("TR-2014", 10064, 99, 38, 0.78, 0.72, 470327.0, 435391.0),
      tr_profile("TR-2015", 9815, 117, 15, 0.72, 0.92, 534933.0, 395230.0),
  };
  return profiles;
}

std::optional<GeneratorProfile> find_profile(const std::string& name) {
  for (const GeneratorProfile& p : builtin_profiles())
    if (p.name == name) return p;
  std::vector<std::string> candidates;
  if (const char* dir = std::getenv("MCBENCH_PROFILE_DIR")) {
    candidates.push_back(std::string(dir) + "/" + name + ".json");
    candidates.push_back(std::string(dir) + "/" + name);
  }
  candidates.push_back(name);
  for (const std::string& path : candidates) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) continue;
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
  }
  return std::nullopt;
}

GeneratorProfile parse_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProfileError(std::string("invalid profile JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProfileError("profile document must be an object");
  GeneratorProfile p;
  for (const auto& [key, value] : doc.items()) {
    if (key == "name") p.name = value.get<std::string>();
    else if (key == "periods") p.periods = value.get<int>();
    else if (key == "hourly_bid_count") p.hourly_bid_count = value.get<int>();
    else if (key == "supply_block_count")
      p.supply_block_count = value.get<int>();
    else if (key == "demand_block_count")
      p.demand_block_count = value.get<int>();
    else if (key == "hourly_supply_volume_share")
      p.hourly_supply_volume_share = value.get<double>();
    else if (key == "hourly_demand_volume_share")
      p.hourly_demand_volume_share = value.get<double>();
    else if (key == "total_supply_volume")
      p.total_supply_volume = value.get<double>();
    else if (key == "total_demand_volume")
      p.total_demand_volume = value.get<double>();
    else if (key == "price_mean") p.price_mean = value.get<double>();
    else if (key == "price_spread") p.price_spread = value.get<double>();
    else if (key == "block_price_spread")
      p.block_price_spread = value.get<double>();
    else if (key == "block_span_min") p.block_span_min = value.get<int>();
    else if (key == "block_span_max") p.block_span_max = value.get<int>();
    else if (key == "p_min") p.bounds.p_min = value.get<double>();
    else if (key == "p_max") p.bounds.p_max = value.get<double>();
    else throw ProfileError("unknown profile field '" + key + "'");
  }
  return p;
}

std::string render_profile(const GeneratorProfile& p) {
  json doc;
  doc["name"] = p.name;
  doc["periods"] = p.periods;
  doc["hourly_bid_count"] = p.hourly_bid_count;
  doc["supply_block_count"] = p.supply_block_count;
  doc["demand_block_count"] = p.demand_block_count;
  doc["hourly_supply_volume_share"] = p.hourly_supply_volume_share;
  doc["hourly_demand_volume_share"] = p.hourly_demand_volume_share;
  doc["total_supply_volume"] = p.total_supply_volume;
  doc["total_demand_volume"] = p.total_demand_volume;
  doc["price_mean"] = p.price_mean;
  doc["price_spread"] = p.price_spread;
  doc["block_price_spread"] = p.block_price_spread;
  doc["block_span_min"] = p.block_span_min;
  doc["block_span_max"] = p.block_span_max;
  doc["p_min"] = p.bounds.p_min;
  doc["p_max"] = p.bounds.p_max;
  return doc.dump(2) + "\n";
}

GeneratorProfile downscale(const GeneratorProfile& p, double factor) {
  if (factor <= 0.0) throw ProfileError("downscale factor must be > 0");
  GeneratorProfile q = p;
  std::ostringstream name;
  name << p.name << "-ds" << factor;
  q.name = name.str();
  q.hourly_bid_count =
      static_cast<int>(std::llround(p.hourly_bid_count / factor));
  q.supply_block_count =
      static_cast<int>(std::llround(p.supply_block_count / factor));
  q.demand_block_count =
      static_cast<int>(std::llround(p.demand_block_count / factor));
  q.total_supply_volume = p.total_supply_volume / factor;
  q.total_demand_volume = p.total_demand_volume / factor;
  // A side whose block count rounds away keeps its volume as hourly bids.
  if (q.supply_block_count == 0) q.hourly_supply_volume_share = 1.0;
  if (q.demand_block_count == 0) q.hourly_demand_volume_share = 1.0;
  return q;
}

Instance generate(const GeneratorProfile& p, uint64_t seed) {
  check_profile(p);
  Rng rng(seed);
  const int T = p.periods;
  const PriceBounds bounds = p.bounds;

  // Daily price path; the hourly bands around it stay strictly inside the
  // caps so blockless markets always cross in the interior.
  const double w = 2.0 * p.price_spread;
  const double margin = 0.01 * bounds.span();
  const double lo_limit = bounds.p_min + margin + w;
  const double hi_limit = bounds.p_max - margin - w;
  if (lo_limit >= hi_limit)
    throw ProfileError("price bounds too tight for the configured spread");
  const double phase = rng.uniform(0.0, static_cast<double>(T));
  std::vector<double> path(T);
  for (int t = 0; t < T; ++t) {
    double v = p.price_mean +
               p.price_spread *
                   std::sin(2.0 * 3.141592653589793 * (t + phase) / T) +
               rng.normal(0.0, 0.25 * p.price_spread);
    path[t] = std::clamp(v, lo_limit, hi_limit);
  }

  // Hourly segment counts per (period, direction) cell; totals match the
  // profile exactly.
  const int cells = 2 * T;
  std::vector<int> cell_count(cells, p.hourly_bid_count / cells);
  for (int i = 0; i < p.hourly_bid_count % cells; ++i) ++cell_count[i];

  Instance inst = Instance::empty(T, bounds);

  for (int side = 0; side < 2; ++side) {
    const Direction dir = side == 0 ? Direction::Supply : Direction::Demand;
    const double share = side == 0 ? p.hourly_supply_volume_share
                                   : p.hourly_demand_volume_share;
    const double total = side == 0 ? p.total_supply_volume
                                   : p.total_demand_volume;
    const std::vector<double> period_volume =
        random_split(rng, T, share * total);
    for (int t = 0; t < T; ++t) {
      const int n = cell_count[t * 2 + side];
      if (n == 0) continue;
      const double band_lo = path[t] - w;
      const double band_hi = path[t] + w;
      // Breakpoints with guaranteed positive widths.
      std::vector<double> gaps = random_split(rng, n, band_hi - band_lo);
      std::vector<double> weights = random_split(rng, n, period_volume[t]);
      double at = band_lo;
      for (int i = 0; i < n; ++i) {
        const double next = at + gaps[i];
        Segment s;
        if (dir == Direction::Supply) {
          s.p0 = at;
          s.p1 = next;
          s.q = -weights[i];
        } else {
          s.p0 = band_hi - (at - band_lo);
          s.p1 = s.p0 - gaps[i];
          s.q = weights[i];
        }
        inst.segments(t, dir).push_back(s);
        at = next;
      }
    }
  }

  for (int side = 0; side < 2; ++side) {
    const int count =
        side == 0 ? p.supply_block_count : p.demand_block_count;
    if (count == 0) continue;
    const double share = side == 0 ? p.hourly_supply_volume_share
                                   : p.hourly_demand_volume_share;
    const double total = side == 0 ? p.total_supply_volume
                                   : p.total_demand_volume;
    const std::vector<double> volumes =
        random_split(rng, count, (1.0 - share) * total);
    for (int i = 0; i < count; ++i) {
      BlockBid b;
      b.id = (side == 0 ? "s" : "d") + std::to_string(i);
      const int span =
          rng.uniform_int(p.block_span_min, std::min(p.block_span_max, T));
      const int start = rng.uniform_int(0, T - span);
      double anchor = 0.0;
      for (int t = start; t < start + span; ++t) anchor += path[t];
      anchor /= span;
      b.price = std::clamp(anchor + rng.normal(0.0, p.block_price_spread),
                           bounds.p_min + margin, bounds.p_max - margin);
      const double per_period =
          volumes[i] / span * (side == 0 ? -1.0 : 1.0);
      for (int t = start; t < start + span; ++t) b.quantities[t] = per_period;
      inst.blocks.push_back(std::move(b));
    }
  }
  return inst;
}

}  // namespace mcbench
