// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "afc/channel.hpp"
#include "afc/gaussint.hpp"
#include "afc/rng.hpp"

namespace afc::protocol {

using gaussint::GaussianInt;

struct NodeState {
  std::size_t index = 0;
  GaussianInt own_prime;
  ComplexSample own_log;

  NodeState(std::size_t idx, GaussianInt prime);
};

struct NodeResult {
  ComplexSample recovered_key;
  double noisy_norm = 0.0;
  /// Set when an estimated gain was zero or the exponential overflowed.
  bool failed = false;
};

struct RoundOutcome {
  std::vector<NodeResult> nodes;
  GaussianInt true_key;
  std::uint64_t true_norm = 0;
};

/// Transmitter side: principal-branch ln(x) divided by the estimated gain.
/// Throws DomainError for x = 0 or a zero gain.
ComplexSample preprocess(GaussianInt x, ComplexSample estimated_gain);

/// Receiver side: e^y.
ComplexSample postprocess(ComplexSample y);

/// One full-duplex exchange. Receiver j gets, over each link from i != j, the
/// preprocessed value scaled by the true gain, plus per-link thermal noise with
/// E|n|^2 = sigma_n^2 divided by the compensated path-loss amplitude. Noise is
/// drawn receiver-major, transmitter-minor, one variate per ordered link.
RoundOutcome run_round(std::span<const NodeState> nodes, const channel::ChannelRealization& realization,
                       double sigma_n, RandomStream& rng);

}  // namespace afc::protocol
