#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mcbench {

// Seeded generator with fixed sampling algorithms. std::mt19937_64 output
// is standardized, but the std distribution adapters are not; sampling is
// done by hand here so a (profile, seed) pair reproduces bit-identical
// instances on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform01() {  // [0, 1) with 53-bit resolution
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one fresh pair per call keeps the stream position
  // independent of call history.
  double normal(double mean, double sigma) {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform01() * span);
    return v > hi ? hi : v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mcbench
