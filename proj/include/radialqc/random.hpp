#pragma once

#include <cstdint>
#include <random>

namespace radialqc {

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// twister. std::uniform_real_distribution is implementation-defined; this is
/// reproducible across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

}  // namespace radialqc
