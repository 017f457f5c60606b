// SPDX-License-Identifier: MIT
/**
 * @file channel.hpp
 * @brief Channel models for the Monte-Carlo simulator.
 *
 * Three model families are supported:
 *  - bernoulli_gaussian(q): each entry is CN(0,1) with probability q and
 *    exactly zero otherwise (sparse connectivity);
 *  - rayleigh: every entry i.i.d. CN(0,1) (equivalent to q = 1);
 *  - wyner(gamma): the deterministic circulant soft-handoff topology with
 *    unit main diagonal and gain gamma on the two cyclic neighbours.
 *
 * All drawing is done from a caller-provided engine so that results are
 * reproducible from a (seed, trial) pair.
 */
#pragma once

#include <cstddef>

#include "cfdas/rng.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Description of the fading distribution / network topology.
struct ChannelModel {
  enum class Kind {
    bernoulli_gaussian,  ///< entry = Bernoulli(q) mask * CN(0,1)
    rayleigh,            ///< entry = CN(0,1)
    wyner,               ///< deterministic circulant, needs rows == cols
  };

  Kind kind = Kind::rayleigh;
  std::size_t transmitters = 2;  ///< number of users K (matrix columns)
  std::size_t receivers = 2;     ///< number of antenna terminals L (rows)
  double activity = 1.0;         ///< q for bernoulli_gaussian
  double gamma = 0.7;            ///< inter-cell gain for wyner

  /// Throws ConfigError when parameters are out of range.
  void validate() const;
};

/**
 * Draw one uplink channel matrix (receivers x transmitters).
 *
 * For random models the entries are consumed from @p rng in row-major
 * order, one mask decision followed by one value per entry, so the layout
 * of the stream is independent of which entries happen to be active.
 * The wyner model ignores @p rng entirely.
 */
CMat draw_channel(const ChannelModel& model, std::mt19937_64& rng);

/// Downlink channel corresponding to an uplink draw (reciprocity).
CMat downlink_of(const CMat& uplink);

}  // namespace cfdas
