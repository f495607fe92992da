#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ubauc::detail {

// Unbiased draw from [0, n) by rejection. Hand-rolled so that seeded results
// do not depend on the standard library's distribution internals.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; safe to pass to log().
inline double uniform01_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller, one value per call (deterministic, stateless).
inline double gaussian(std::mt19937_64& rng) {
  const double u = uniform01_open(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

inline std::vector<long> permutation(long n, std::mt19937_64& rng) {
  std::vector<long> idx(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  shuffle(idx, rng);
  return idx;
}

}  // namespace ubauc::detail
