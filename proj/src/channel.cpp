// SPDX-License-Identifier: MIT
/**
 * @file channel.cpp
 * @brief Channel model drawing.
 */
#include "cfdas/channel.hpp"

#include "cfdas/errors.hpp"

namespace cfdas {

void ChannelModel::validate() const {
  if (transmitters == 0) throw ConfigError("channel: transmitters must be >= 1");
  if (receivers == 0) throw ConfigError("channel: receivers must be >= 1");
  switch (kind) {
    case Kind::bernoulli_gaussian:
      if (!(activity >= 0.0 && activity <= 1.0))
        throw ConfigError("channel: activity must lie in [0, 1]");
      break;
    case Kind::rayleigh:
      break;
    case Kind::wyner:
      if (receivers != transmitters)
        throw ConfigError("channel: wyner topology needs receivers == transmitters");
      if (!(gamma >= 0.0))
        throw ConfigError("channel: gamma must be >= 0");
      break;
  }
}

CMat draw_channel(const ChannelModel& model, std::mt19937_64& rng) {
  model.validate();
  const std::size_t rows = model.receivers;
  const std::size_t cols = model.transmitters;
  CMat h = CMat::Zero(static_cast<Eigen::Index>(rows),
                      static_cast<Eigen::Index>(cols));

  switch (model.kind) {
    case ChannelModel::Kind::bernoulli_gaussian:
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          // Draw mask and value unconditionally so the stream layout does
          // not depend on which entries are active.
          const bool on = uniform01(rng) < model.activity;
          const cplx v = circular_normal(rng);
          if (on) h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
      }
      break;
    case ChannelModel::Kind::rayleigh:
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              circular_normal(rng);
      break;
    case ChannelModel::Kind::wyner: {
      const std::size_t n = rows;
      for (std::size_t r = 0; r < n; ++r) {
        h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = 1.0;
        const std::size_t left = (r + n - 1) % n;
        const std::size_t right = (r + 1) % n;
        // Cyclic neighbours; for rings of size <= 2 they coincide with each
        // other or with the cell itself, in which case the unit gain wins.
        if (left != r)
          h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(left)) = model.gamma;
        if (right != r)
          h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(right)) = model.gamma;
      }
      break;
    }
  }
  return h;
}

CMat downlink_of(const CMat& uplink) { return uplink.transpose(); }

}  // namespace cfdas
