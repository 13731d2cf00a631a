// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace afc {

using ComplexSample = std::complex<double>;
using RandomStream = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/// Independent stream for one (seed, stream key, trial) coordinate. The result does
/// not depend on the order in which coordinates are visited.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_key, std::uint64_t trial_index) {
  const std::uint64_t s = mix64(mix64(mix64(master_seed) ^ stream_key) ^ (trial_index * 0xd1b54a32d192ed03ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32U)};
  return RandomStream(seq);
}

/// Circularly symmetric complex normal with E|z|^2 = 1.
inline ComplexSample standard_complex_normal(RandomStream& rng) {
  std::normal_distribution<double> n(0.0, 0.7071067811865476);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace afc
