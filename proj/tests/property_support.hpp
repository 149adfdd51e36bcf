#pragma once

#include <cstdint>
#include <random>

namespace props {

inline constexpr int kCases = 1000;

// Each property gets its own stream so that adding cases elsewhere leaves it unchanged.
inline std::mt19937_64 rng_for(std::uint64_t property_id) { return std::mt19937_64(0x6a73696dULL ^ (property_id * 0x9e3779b97f4a7c15ULL)); }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

}  // namespace props
