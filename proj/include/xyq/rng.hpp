// SPDX-License-Identifier: Apache-2.0
//
// Seedable, splittable random streams. Every stochastic routine takes an
// explicit engine; parallel work derives one stream per work item from the
// master seed so results do not depend on the schedule.

#pragma once

#include <cstdint>
#include <random>

namespace xyq {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream `index` of master seed `seed`.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index + 1))),
                    static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index + 1)) >> 32)};
  return Rng(seq);
}

// Uniform double in [0, 1) built from 53 random bits, identical across
// standard library implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Binomial draw by direct Bernoulli summation. Portable (std::binomial_distribution
// is implementation-defined) and fast enough for shot counts in the thousands.
inline int binomial(Rng& rng, int n, double p) {
  int k = 0;
  for (int i = 0; i < n; ++i) k += uniform01(rng) < p ? 1 : 0;
  return k;
}

}  // namespace xyq
