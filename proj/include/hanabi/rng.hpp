#pragma once

#include <cstdint>

namespace hanabi {

// splitmix64, fixed algorithm version 1. Every seeded behavior in the project
// (deck shuffles, random agents, bootstrap resampling) flows through this
// generator so that identical seeds give identical runs on any platform.
class Rng {
 public:
  static constexpr const char* kName = "splitmix64-v1";

  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Rejection sampling keeps the draw unbiased.
  uint64_t bounded(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Mixes a stream id into a seed so derived generators are independent.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  Rng rng(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
  return rng.next();
}

} // namespace hanabi
