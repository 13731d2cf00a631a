// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace afc::factorint {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factors in ascending order. When `complete` is false, `cofactor` holds the
/// part of the input that was left unfactored (always 1 when complete).
struct Factorization {
  std::vector<PrimePower> factors;
  bool complete = true;
  std::uint64_t cofactor = 1;

  /// Product of the listed prime powers; throws OverflowError past 64 bits.
  std::uint64_t product() const;
  /// Same prime multiset; completeness is compared as well.
  friend bool operator==(const Factorization&, const Factorization&) = default;
  std::string to_string() const;
};

enum class FactorMode { unlimited, limited };

struct FactorPolicy {
  FactorMode mode = FactorMode::unlimited;
  std::uint64_t trial_division_bound = 1000;
  std::uint64_t rho_max_iterations = 1'000'000;
  unsigned digit_threshold = 5;
  std::uint64_t p_minus_1_bound = 10'000;

  void validate() const;
  friend bool operator==(const FactorPolicy&, const FactorPolicy&) = default;
};

Factorization trial_division(std::uint64_t n);

/// Nontrivial divisor via x^2 + increment (mod n) with Floyd cycle detection, or
/// nullopt once `max_iterations` steps pass without a split.
std::optional<std::uint64_t> pollard_rho(std::uint64_t n, std::uint64_t max_iterations,
                                         std::uint64_t increment = 1);

/// Stage-one p-1 with base 2. The gcd is taken after every prime power so a
/// smooth factor is caught before a second one collapses the gcd to n.
std::optional<std::uint64_t> pollard_p_minus_1(std::uint64_t n, std::uint64_t smoothness_bound);

Factorization factor(std::uint64_t n, const FactorPolicy& policy = {});

struct NoisySearchResult {
  bool success = false;
  std::optional<std::uint64_t> matched_candidate;
};

/// Expanding-ring search n~, n~+1, n~-1, n~+2, ... out to |offset| = tolerance
/// around n~ = max(1, round(noisy_norm)). Succeeds on the first candidate whose
/// factorization under `policy` is complete and equals `true_factors`.
NoisySearchResult noisy_factor_search(double noisy_norm, const Factorization& true_factors,
                                      std::uint64_t tolerance, const FactorPolicy& policy = {});

/// Number of decimal digits of n (1 for n = 0).
unsigned decimal_digits(std::uint64_t n);

}  // namespace afc::factorint
