#pragma once
// Seeded PRNG used everywhere randomness is needed: splitmix64 expands the
// user seed into xoshiro256++ state, doubles come from the top 53 bits.
// The algorithm is fixed so a given seed produces the same stream on every
// build and platform.

#include <cmath>
#include <cstdint>

namespace adamus {

struct SplitMix64 {
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state;
};

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;

    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];

    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);

    return result;
  }

  // Uniform in [0, 1): top 53 bits divided by 2^53.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi). Rounding can land the affine map exactly on hi;
  // the result is nudged back below to keep the half-open contract.
  double next_in_range(double lo, double hi) {
    double v = lo + (hi - lo) * next_double();
    if (v >= hi) v = std::nextafter(hi, lo);
    return v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace adamus
