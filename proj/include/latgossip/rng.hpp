#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace latgossip {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a list of coordinates.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

/// Uniform double in [0,1) that is a pure function of its arguments.
inline double hash_unit(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  return static_cast<double>(derive_seed(seed, parts) >> 11) * 0x1.0p-53;
}

}  // namespace latgossip
