#pragma once

#include <cmath>
#include <cstdint>

namespace crnmix {

/// xoshiro256** stream seeded through splitmix64 from (seed, replicate).
/// Each replicate owns an independent stream derived purely from the pair,
/// so results never depend on which worker runs which replicate.
class RngStream {
 public:
  static RngStream for_replicate(std::uint64_t seed, std::uint64_t replicate) {
    RngStream r;
    std::uint64_t sm = seed ^ (0x9E3779B97F4A7C15ULL * (replicate + 1));
    for (int i = 0; i < 4; ++i) r.s_[i] = splitmix64(sm);
    if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[0] = 0x1ULL;
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Exponential holding time with the given rate (> 0).
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4] = {};
};

}  // namespace crnmix
