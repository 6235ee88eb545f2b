#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcbench/types.hpp"

namespace mcbench {

// Structural profile of one synthetic market day. The built-in TR-20xx
// profiles carry the yearly daily-average bid counts and volume shares of
// the Turkish day-ahead market; prices and dispersion are free parameters.
struct GeneratorProfile {
  std::string name;
  int periods = 24;
  int hourly_bid_count = 0;  // hourly segments per day, both directions
  int supply_block_count = 0;
  int demand_block_count = 0;
  double hourly_supply_volume_share = 1.0;  // hourly / total supply volume
  double hourly_demand_volume_share = 1.0;
  double total_supply_volume = 0.0;  // MWh per day
  double total_demand_volume = 0.0;
  double price_mean = 160.0;   // daily price path level
  double price_spread = 40.0;  // path swing + dispersion scale
  double block_price_spread = 25.0;
  int block_span_min = 1;  // consecutive periods covered by a block
  int block_span_max = 8;
  PriceBounds bounds{0.0, 2000.0};
};

class ProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// TR-2012 .. TR-2015.
const std::vector<GeneratorProfile>& builtin_profiles();

// Looks up a built-in by name, then a JSON profile document in
// MCBENCH_PROFILE_DIR (and as a bare path).
std::optional<GeneratorProfile> find_profile(const std::string& name);

GeneratorProfile parse_profile(const std::string& text);
std::string render_profile(const GeneratorProfile& profile);

// Divides counts (rounded half away from zero) and volumes by `factor`,
// producing oracle-checkable desk-scale instances.
GeneratorProfile downscale(const GeneratorProfile& profile, double factor);

// Deterministic synthetic instance: bid counts match the profile exactly,
// realized volumes match the share split exactly, hourly curves cross
// strictly inside (p_min, p_max) when blocks are removed. Throws
// ProfileError on inconsistent profiles.
Instance generate(const GeneratorProfile& profile, uint64_t seed);

}  // namespace mcbench
