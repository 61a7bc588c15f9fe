#pragma once

#include <cstdint>
#include <limits>

namespace wanderlust {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based random stream: the state is derived from a seed plus a key
/// tuple, so any (seed, key) pair can be drawn independently of the order in
/// which other keys are visited. Satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t domain, std::uint64_t a = 0, std::uint64_t b = 0)
      : state_(splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ domain) ^ a) ^ b)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Stream domains, one per independent use of the seed.
namespace stream {
inline constexpr std::uint64_t kSampleVisits = 1;
inline constexpr std::uint64_t kPlaybackInit = 2;
inline constexpr std::uint64_t kPlaybackStep = 3;
inline constexpr std::uint64_t kDiscScatter = 4;
}  // namespace stream

}  // namespace wanderlust
