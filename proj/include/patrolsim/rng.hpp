#pragma once

#include <cstdint>
#include <random>

namespace patrolsim {

// Draws in [0, 1) with 53-bit resolution. Hand-rolled instead of
// std::uniform_real_distribution so sequences are identical across
// standard library implementations.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer draw in [0, n) via rejection sampling.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % n;
}

}  // namespace patrolsim
