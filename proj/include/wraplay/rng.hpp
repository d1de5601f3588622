#pragma once

// Portable seeded PRNG. Every stochastic step in the library draws from this
// generator so corpora and layouts reproduce bit-for-bit on any platform.
//
//   seeding : SplitMix64 expands a 64-bit seed into the 256-bit state
//   engine  : xoshiro256** (Blackman & Vigna, 2018)
//   doubles : top 53 bits of next() scaled by 2^-53, giving [0, 1)
//   ints    : rejection sampling on the full 64-bit output (unbiased)
//   shuffle : Fisher-Yates from the back, using uniform_below()
//
// std::mt19937 would be fine as an engine but std::uniform_*_distribution and
// std::shuffle are implementation-defined, so they are not used anywhere.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace wraplay {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

  // Independent stream for (seed, stream). Used for generator retries.
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t mix = seed;
    const std::uint64_t a = splitmix64(mix);
    mix = stream ^ 0x6a09e667f3bcc909ULL;
    const std::uint64_t b = splitmix64(mix);
    reseed(a ^ (b * 0x9e3779b97f4a7c15ULL));
  }

  void reseed(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return next(); }

  result_type next() {
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

  // [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, bound); bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(uniform_below(span));
  }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace wraplay
