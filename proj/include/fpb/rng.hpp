#pragma once

#include <cstdint>
#include <random>

namespace fpb {

using Rng = std::mt19937_64;

// SplitMix64 step; used as the seed mixer so that derived seeds are
// decorrelated even for adjacent (base, stream) inputs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Replication r of an experiment with base seed s draws from streams
// derive_seed(s, r, k), k = fixed per-stream tag. Documented in the README;
// results are a pure function of (s, r) and never of thread scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ splitmix64(stream + 0x9e3779b97f4a7c15ull));
  h = splitmix64(h ^ splitmix64(substream + 0x6a09e667f3bcc909ull));
  return h;
}

// Stream tags for the per-replication substreams.
inline constexpr std::uint64_t kStreamMarket = 1;   // highest-competing-bid draws
inline constexpr std::uint64_t kStreamValues = 2;   // value schedule draws
inline constexpr std::uint64_t kStreamReveal = 3;   // abstract-instance reward draws
inline constexpr std::uint64_t kStreamInstance = 4; // per-rep instance randomization

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace fpb
