#pragma once

#include <cstdint>
#include <random>

namespace entwined {

/// mt19937_64 output is fixed by the standard, so seeded runs are portable.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream number `index` derived from a base seed:
/// splitmix64(seed ^ splitmix64(index)).
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index));
}

/// Largest seed that round-trips through an IEEE double.
inline constexpr std::uint64_t kSeedMask = (1ULL << 53) - 1;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace entwined
