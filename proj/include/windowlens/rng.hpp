#pragma once

#include <cstdint>
#include <random>

namespace windowlens {

// mt19937_64 output is pinned by the standard. The draw helpers below avoid
// std::*_distribution, whose mapping is implementation-defined, so seeded
// streams are identical across compilers and platforms.

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64 &g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64 &g, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

/// Uniform integer in [lo, hi], inclusive.
inline int uniform_int(std::mt19937_64 &g, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// splitmix64 step; used to derive independent per-worker seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace windowlens
