// SPDX-License-Identifier: MIT
/**
 * @file rng.cpp
 * @brief Purpose-tagged deterministic random streams.
 */
#include "cfdas/rng.hpp"

#include <cmath>

namespace cfdas {

namespace {

/// splitmix64 finalizer: bijective avalanche mix of one 64-bit word.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::mt19937_64 make_rng(std::uint64_t master_seed, std::uint64_t trial,
                         RngPurpose purpose) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ trial);
  s = splitmix64(s ^ static_cast<std::uint64_t>(purpose));
  return std::mt19937_64(s);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  // u1 in (0, 1] so the logarithm is finite.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

cplx circular_normal(std::mt19937_64& rng) {
  // Both Box–Muller outputs of one uniform pair, scaled to variance 1/2
  // per component.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace cfdas
