#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace stagwalk {

/// Seedable 64-bit generator used for every random draw in the toolkit.
///
/// This is the standard Mersenne Twister `std::mt19937_64`, whose output
/// sequence is fixed by the C++ standard (the 10000th draw of a
/// default-seeded engine is 9981545732273789042). The std distributions are
/// implementation-defined, so conversions to doubles and bounded integers
/// are done here explicitly to keep results identical across toolchains.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; decorrelates derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for realization `index` of an ensemble rooted at `seed`.
///
/// Attempt 0 is `seed + index`; retries (e.g. regenerating a disconnected
/// graph) hash the attempt number in so they never collide with the plain
/// seeds of neighbouring realizations.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index,
                                    std::uint64_t attempt = 0) {
  const std::uint64_t base = seed + index;
  if (attempt == 0) return base;
  return splitmix64(base ^ splitmix64(attempt));
}

}  // namespace stagwalk
