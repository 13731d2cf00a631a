// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace afc::numtheory {

__extension__ typedef unsigned __int128 uint128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Deterministic Miller-Rabin over the first twelve prime bases, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace afc::numtheory
