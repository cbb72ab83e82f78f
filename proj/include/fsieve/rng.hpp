#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace fsieve {

// Portable deterministic random number generation. Seeded runs must produce
// identical streams on every platform and in every language that reimplements
// these generators, so the algorithms are pinned here by their constants:
//
//   SplitMix64 (Steele, Lea & Flood): state += 0x9E3779B97F4A7C15, then the
//   output is mixed with 0xBF58476D1CE4E5B9 (>>30) and 0x94D049BB133111EB
//   (>>27), final shift >>31.
//
//   xoshiro256** (Blackman & Vigna): scrambler rotl(s1 * 5, 7) * 9,
//   rotations 17 and 45, shift 17. State initialized from SplitMix64.
//
// Bounded integers use rejection sampling (no modulo bias); unit doubles use
// the top 53 bits. No std::*_distribution anywhere: those are not specified
// bit-exactly by the standard.

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 mixer(seed);
    for (auto& word : state_) word = mixer.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound). Requires bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bool() { return (next() >> 63) != 0; }

  // Fisher-Yates, iterating from the back. The visit order is part of the
  // portable contract.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace fsieve
