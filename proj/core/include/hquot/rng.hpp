#pragma once

#include <cstdint>

namespace hquot {

// Counter-based pseudo-random generator (splitmix64). Output is a pure
// function of (seed, call index), so identically seeded streams are
// byte-reproducible across platforms -- unlike the standard library
// distributions, whose rounding is implementation-defined.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, bound). Bound must be positive and small
  // relative to 2^64; modulo bias is negligible for our sample sizes.
  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

  // Independent substream derived from this seed and a stream label.
  SplitMix64 fork(std::uint64_t label) const {
    SplitMix64 mixer(state_ ^ (0x632be59bd9b4e019ULL * (label + 1)));
    return SplitMix64(mixer.next_u64());
  }

private:
  std::uint64_t state_;
};

}  // namespace hquot
