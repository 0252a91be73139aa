#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hullfacets {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic per-replicate stream: depends only on (seed, index), so
// results are identical no matter how replicates are scheduled over threads.
class RngStream {
public:
  RngStream(uint64_t seed, uint64_t index)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(~index))) {}

  // Uniform in (0,1): 53-bit mantissa, zero excluded.
  double uniform() {
    uint64_t bits;
    do {
      bits = eng_() >> 11;
    } while (bits == 0);
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hullfacets
