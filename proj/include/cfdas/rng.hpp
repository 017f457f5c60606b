// SPDX-License-Identifier: MIT
/**
 * @file rng.hpp
 * @brief Purpose-tagged deterministic random streams for the Monte Carlo
 *        engine.
 *
 * Every consumer of randomness (channel draws, random selection baselines,
 * dithers, receiver noise, message symbols) gets its own generator derived
 * from (master seed, trial index, purpose tag). Streams are independent by
 * construction, so adding a scheme or reordering evaluations never perturbs
 * the channel realizations of existing experiments, and a trial can be
 * replayed in isolation.
 */
#pragma once

#include <cstdint>
#include <random>

#include "cfdas/types.hpp"

namespace cfdas {

/// Consumers of randomness, each with a disjoint stream per (seed, trial).
enum class RngPurpose : std::uint64_t {
  channel = 1,        ///< Fading matrix entries and Bernoulli masks.
  random_select = 2,  ///< The random antenna-selection baseline.
  dither = 3,         ///< Dither sequences for lattice/quantizer simulation.
  noise = 4,          ///< Receiver noise samples.
  symbols = 5,        ///< Message symbols over the finite field.
};

/// Deterministic generator for the (master_seed, trial, purpose) stream.
/// The three inputs are mixed through splitmix64 steps, so neighboring
/// trials and purposes land in unrelated states.
std::mt19937_64 make_rng(std::uint64_t master_seed, std::uint64_t trial,
                         RngPurpose purpose);

/// Uniform double in [0, 1) with 53 random bits (platform-independent).
double uniform01(std::mt19937_64& rng);

/// Standard normal via Box–Muller on uniform01 draws. Implemented here
/// rather than with std::normal_distribution so that byte-identical output
/// across standard libraries is part of the contract.
double standard_normal(std::mt19937_64& rng);

/// Circularly-symmetric complex normal CN(0, 1): real and imaginary parts
/// are i.i.d. N(0, 1/2). One call consumes exactly two uniforms.
cplx circular_normal(std::mt19937_64& rng);

}  // namespace cfdas
