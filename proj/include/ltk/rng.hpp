#pragma once

#include <cstdint>
#include <string_view>

// Deterministic RNG used by all randomized suites: splitmix64 over a 64-bit
// state (documented in the README so reports can be reproduced elsewhere).
// Streams for sub-tasks are derived by hashing a label into the seed, which
// keeps parallel trial loops order-independent.

namespace ltk {

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t below(uint64_t bound) {
    uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % bound;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }
};

inline uint64_t mix_seed(uint64_t seed, std::string_view label, uint64_t index = 0) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= index + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return seed ^ h;
}

}  // namespace ltk
