#pragma once

#include <cstdint>
#include <limits>

namespace icsym {

/// SplitMix64 generator. The whole state is one word, so a fresh stream per
/// trial costs nothing and streams can be derived from (master seed, index)
/// without any sequential dependency between trials.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix(state_ += kGamma); }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

using RandomStream = SplitMix64;

/// Seed of the stream with the given index under a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64::mix(SplitMix64::mix(master) ^ SplitMix64::mix(index + SplitMix64::kGamma));
}

constexpr RandomStream make_stream(std::uint64_t master, std::uint64_t index) noexcept {
  return RandomStream(derive_seed(master, index));
}

/// Uniform double on [0, 1) from the top 53 bits.
inline double uniform01(RandomStream& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double on the open interval (0, 1).
inline double uniform_open01(RandomStream& rng) noexcept {
  double u = 0.0;
  while (u == 0.0) u = uniform01(rng);
  return u;
}

/// One Bernoulli(p) trial. Always consumes exactly one draw, so p = 0 and
/// p = 1 do not shift the rest of the stream.
inline bool bernoulli(RandomStream& rng, double p) noexcept { return uniform01(rng) < p; }

}  // namespace icsym
