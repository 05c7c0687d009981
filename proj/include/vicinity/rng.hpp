#pragma once

#include <cstdint>
#include <limits>

namespace vicinity {

// SplitMix64 (Steele, Lea, Flood 2014). The full output sequence is fixed by
// the three constants below, so a seed reproduces bit-identical graphs and
// landmark sets on every platform:
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform01() takes the top 53 bits; below(n) rejects the biased low range.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

// Independent stream for a (seed, tag) pair; used so that e.g. the landmark
// draw of scheme "rear" and of scheme "tz" under the same experiment seed
// do not share random bits.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  SplitMix64 mix(seed ^ (tag * 0xD1B54A32D192ED03ULL));
  mix.next();
  return mix.next();
}

// Stable tag for a short ASCII name (FNV-1a).
constexpr std::uint64_t name_tag(const char* s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (; *s != '\0'; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace vicinity
