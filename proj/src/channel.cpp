// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "afc/errors.hpp"

namespace afc::channel {

RicianParams::RicianParams(double k_factor) : k_factor_(k_factor) {
  if (!(k_factor >= 0.0)) throw ConfigError("Rician K-factor must be non-negative (got " + std::to_string(k_factor) + ")");
  if (std::isinf(k_factor)) {
    los_amplitude_ = 1.0;
    scale_ = 0.0;
  } else {
    los_amplitude_ = std::sqrt(k_factor / (k_factor + 1.0));
    scale_ = std::sqrt(0.5 / (k_factor + 1.0));
  }
}

double RicianParams::recovered_k() const {
  const double diffuse = diffuse_power();
  if (diffuse == 0.0) return std::numeric_limits<double>::infinity();
  return los_amplitude_ * los_amplitude_ / diffuse;
}

double Geometry::distance(std::size_t i, std::size_t j) const {
  return std::hypot(positions.at(i).x - positions.at(j).x, positions.at(i).y - positions.at(j).y);
}

void Geometry::validate() const {
  if (positions.size() < 2) throw ConfigError("geometry needs at least two nodes");
  if (!(wavelength > 0.0)) throw ConfigError("wavelength must be positive");
  if (!(tx_gain > 0.0) || !(rx_gain > 0.0)) throw ConfigError("antenna gains must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (!(distance(i, j) > 0.0)) {
        throw ConfigError("nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

Geometry Geometry::regular(std::size_t node_count, double spacing, double wavelength, double tx_gain,
                           double rx_gain) {
  if (!(spacing > 0.0)) throw ConfigError("node spacing must be positive");
  Geometry g;
  g.wavelength = wavelength;
  g.tx_gain = tx_gain;
  g.rx_gain = rx_gain;
  if (node_count == 2) {
    g.positions = {{0.0, 0.0}, {spacing, 0.0}};
  } else {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(node_count);
    const double radius = spacing / (2.0 * std::sin(step / 2.0));
    for (std::size_t i = 0; i < node_count; ++i) {
      const double angle = step * static_cast<double>(i);
      g.positions.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
  }
  return g;
}

ComplexSample sample_small_scale(const RicianParams& params, RandomStream& rng) {
  const ComplexSample z = standard_complex_normal(rng);
  return params.los_amplitude() + std::sqrt(params.diffuse_power()) * z;
}

double pathloss_amplitude(double d, const Geometry& geom, PathlossMode mode) {
  if (!(d > 0.0)) throw DomainError("pathloss_amplitude: distance must be positive");
  switch (mode) {
    case PathlossMode::physical:
      return std::sqrt(geom.tx_gain * geom.rx_gain) * geom.wavelength / (4.0 * std::numbers::pi * d);
    case PathlossMode::normalized:
      return kReferenceDistance / d;
  }
  return 0.0;
}

ChannelRealization::ChannelRealization(std::size_t node_count)
    : node_count_(node_count), links_(node_count * (node_count - 1) / 2) {
  if (node_count < 2) throw ConfigError("channel realization needs at least two nodes");
}

std::size_t ChannelRealization::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= node_count_ || j >= node_count_) throw DomainError("no link between a node and itself");
  if (i > j) std::swap(i, j);
  // Row-major upper triangle.
  return i * node_count_ - i * (i + 1) / 2 + (j - i - 1);
}

ChannelRealization realize(const Geometry& geom, const RicianParams& params, double sigma_h, PathlossMode mode,
                           RandomStream& rng) {
  ChannelRealization out(geom.node_count());
  for (std::size_t i = 0; i < geom.node_count(); ++i) {
    for (std::size_t j = i + 1; j < geom.node_count(); ++j) {
      LinkRecord& rec = out.link(i, j);
      rec.true_gain = sample_small_scale(params, rng);
      rec.estimated_gain = rec.true_gain + sigma_h * standard_complex_normal(rng);
      rec.pathloss_amplitude = pathloss_amplitude(geom.distance(i, j), geom, mode);
    }
  }
  return out;
}

}  // namespace afc::channel
