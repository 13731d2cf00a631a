// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "afc/rng.hpp"

namespace afc::channel {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Unit-power Rician fading: LOS amplitude nu and diffuse power 2*sigma^2 with
/// nu^2 + 2*sigma^2 = 1. K may be +infinity (pure LOS).
class RicianParams {
 public:
  explicit RicianParams(double k_factor);

  double k_factor() const { return k_factor_; }
  double los_amplitude() const { return los_amplitude_; }
  /// Per-dimension scale sigma of the envelope density.
  double scale() const { return scale_; }
  double diffuse_power() const { return 2.0 * scale_ * scale_; }
  /// K recovered from nu^2 / (2 sigma^2).
  double recovered_k() const;

 private:
  double k_factor_;
  double los_amplitude_;
  double scale_;
};

enum class PathlossMode { physical, normalized };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Geometry {
  std::vector<Point2> positions;
  double wavelength = kSpeedOfLight / 2.4e9;
  double tx_gain = 1.0;
  double rx_gain = 1.0;

  std::size_t node_count() const { return positions.size(); }
  double distance(std::size_t i, std::size_t j) const;
  /// Throws ConfigError if fewer than two nodes or any two coincide.
  void validate() const;

  /// Nodes on a regular polygon whose side equals `spacing` (all pairs equidistant for N <= 3).
  static Geometry regular(std::size_t node_count, double spacing, double wavelength, double tx_gain = 1.0,
                          double rx_gain = 1.0);
};

ComplexSample sample_small_scale(const RicianParams& params, RandomStream& rng);

/// Reference distance for the normalized mode.
inline constexpr double kReferenceDistance = 1.0;

/// physical: sqrt(Gt*Gr) * lambda / (4 pi d). normalized: d0 / d.
double pathloss_amplitude(double d, const Geometry& geom, PathlossMode mode);

struct LinkRecord {
  ComplexSample true_gain;
  ComplexSample estimated_gain;
  double pathloss_amplitude = 1.0;
};

/// One reciprocal link record per unordered node pair.
class ChannelRealization {
 public:
  explicit ChannelRealization(std::size_t node_count);

  std::size_t node_count() const { return node_count_; }
  std::size_t link_count() const { return links_.size(); }
  /// Same record for (i, j) and (j, i).
  const LinkRecord& link(std::size_t i, std::size_t j) const { return links_[pair_index(i, j)]; }
  LinkRecord& link(std::size_t i, std::size_t j) { return links_[pair_index(i, j)]; }

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::size_t node_count_;
  std::vector<LinkRecord> links_;
};

/// Draws, per pair in (0,1), (0,2), ..., (1,2), ... order: the small-scale gain, then the
/// estimation error w_h with E|w_h|^2 = sigma_h^2. The draw count is independent of
/// sigma_h so sweeps over it reuse the same underlying variates.
ChannelRealization realize(const Geometry& geom, const RicianParams& params, double sigma_h, PathlossMode mode,
                           RandomStream& rng);

}  // namespace afc::channel
