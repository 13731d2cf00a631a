// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/protocol.hpp"

#include <cmath>

#include "afc/errors.hpp"

namespace afc::protocol {

NodeState::NodeState(std::size_t idx, GaussianInt prime)
    : index(idx), own_prime(prime), own_log(std::log(prime.to_complex())) {
  if (prime == GaussianInt{}) throw DomainError("node prime must be nonzero");
}

ComplexSample preprocess(GaussianInt x, ComplexSample estimated_gain) {
  if (x == GaussianInt{}) throw DomainError("preprocess: cannot take the logarithm of zero");
  if (estimated_gain == ComplexSample{}) throw DomainError("preprocess: degenerate channel (zero estimated gain)");
  return std::log(x.to_complex()) / estimated_gain;
}

ComplexSample postprocess(ComplexSample y) { return std::exp(y); }

RoundOutcome run_round(std::span<const NodeState> nodes, const channel::ChannelRealization& realization,
                       double sigma_n, RandomStream& rng) {
  if (nodes.size() < 2) throw ConfigError("a round needs at least two nodes");
  if (realization.node_count() != nodes.size()) throw ConfigError("channel realization does not match node count");

  RoundOutcome out;
  out.nodes.resize(nodes.size());

  std::vector<GaussianInt> primes;
  primes.reserve(nodes.size());
  for (const auto& n : nodes) primes.push_back(n.own_prime);
  out.true_key = gaussint::product(primes);
  out.true_norm = gaussint::norm(out.true_key);

  for (std::size_t j = 0; j < nodes.size(); ++j) {
    NodeResult& res = out.nodes[j];
    ComplexSample y{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i == j) continue;
      const channel::LinkRecord& link = realization.link(i, j);
      const ComplexSample noise = sigma_n * standard_complex_normal(rng);
      if (link.estimated_gain == ComplexSample{}) {
        res.failed = true;
        continue;
      }
      // ln(x_i)/g_est travels through g, so the log arrives scaled by g/g_est; the
      // receiver then undoes the known path loss a, which scales its noise by 1/a.
      const ComplexSample mismatch = link.true_gain / link.estimated_gain;
      y += mismatch * nodes[i].own_log + noise / link.pathloss_amplitude;
    }
    if (res.failed) continue;
    // x_j * e^y evaluated as e^(ln x_j + y): the two-node ideal round then sums the same
    // two logs at both ends and yields bit-identical keys.
    res.recovered_key = postprocess(nodes[j].own_log + y);
    res.noisy_norm = std::norm(res.recovered_key);
    if (!std::isfinite(res.noisy_norm)) res.failed = true;
  }
  return out;
}

}  // namespace afc::protocol
