#ifndef CITS_RNG_HPP
#define CITS_RNG_HPP

#include <cstdint>
#include <random>

namespace cits {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-run seed: splitmix64(splitmix64(master) ^ run_index).
/// Stable across releases; ensembles can be extended without reseeding.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run_index) noexcept {
  return splitmix64(splitmix64(master) ^ run_index);
}

}  // namespace cits

#endif  // CITS_RNG_HPP
