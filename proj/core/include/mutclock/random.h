#pragma once

#include <cstdint>
#include <random>

namespace mutclock {

// Every replicate owns one engine; engines are never shared across threads.
using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood 2014).  Bijective on 64-bit words.
constexpr auto splitmix64_mix(std::uint64_t z) -> std::uint64_t {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed splitting rule for replicates:
//
//   seed_i = splitmix64_mix(base_seed + (i + 1) * 0x9e3779b97f4a7c15)
//
// i.e. the i-th output of a SplitMix64 generator started at `base_seed`.  The
// value depends only on (base_seed, i), so serial and parallel runs agree.
constexpr auto replicate_seed(std::uint64_t base_seed, std::uint64_t index) -> std::uint64_t {
  return splitmix64_mix(base_seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

inline auto make_rng(std::uint64_t seed) -> Rng { return Rng{seed}; }

// Uniform on [0, 1).
inline auto uniform01(Rng& rng) -> double {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

inline auto exponential(Rng& rng, double rate) -> double {
  return std::exponential_distribution<double>{rate}(rng);
}

}  // namespace mutclock
