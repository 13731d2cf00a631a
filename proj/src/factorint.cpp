// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/factorint.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "afc/errors.hpp"
#include "afc/primality.hpp"

namespace afc::factorint {
namespace {

using numtheory::gcd;
using numtheory::is_prime;
using numtheory::mul_mod;
using numtheory::pow_mod;
using numtheory::uint128;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<uint128>(r) * r > n) --r;
  while (static_cast<uint128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Divides out every f in [2, bound] while f*f <= n. Returns the remaining cofactor and
// whether it is known prime (or 1) because the scan passed its square root.
struct Stripped {
  std::uint64_t cofactor;
  bool resolved;
};

Stripped strip_small(std::uint64_t n, std::uint64_t bound, std::map<std::uint64_t, unsigned>& into) {
  std::uint64_t f = 2;
  for (; f <= bound && static_cast<uint128>(f) * f <= n; f += (f == 2 ? 1 : 2)) {
    while (n % f == 0) {
      ++into[f];
      n /= f;
    }
  }
  const bool resolved = n == 1 || static_cast<uint128>(f) * f > n;
  if (n > 1 && resolved) {
    ++into[n];
    n = 1;
  }
  return {n, resolved};
}

Factorization from_map(const std::map<std::uint64_t, unsigned>& m) {
  Factorization out;
  out.factors.reserve(m.size());
  for (auto [p, e] : m) out.factors.push_back({p, e});
  return out;
}

// Splits an odd composite m > 1 into prime factors using rho, falling back to p-1.
void split_composite(std::uint64_t m, const FactorPolicy& policy, std::map<std::uint64_t, unsigned>& into) {
  if (m == 1) return;
  if (is_prime(m)) {
    ++into[m];
    return;
  }
  if (m % 2 == 0) {
    ++into[2];
    split_composite(m / 2, policy, into);
    return;
  }
  if (const std::uint64_t r = isqrt(m); r * r == m) {
    split_composite(r, policy, into);
    split_composite(r, policy, into);
    return;
  }
  for (std::uint64_t increment = 1;; ++increment) {
    auto d = pollard_rho(m, policy.rho_max_iterations, increment);
    if (!d) d = pollard_p_minus_1(m, policy.p_minus_1_bound);
    if (d) {
      split_composite(*d, policy, into);
      split_composite(m / *d, policy, into);
      return;
    }
  }
}

}  // namespace

std::uint64_t Factorization::product() const {
  std::uint64_t acc = 1;
  for (const auto& pp : factors) {
    for (unsigned e = 0; e < pp.exponent; ++e) {
      if (__builtin_mul_overflow(acc, pp.prime, &acc)) throw OverflowError("factorization product overflows");
    }
  }
  return acc;
}

std::string Factorization::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(factors[i].prime) + ":" + std::to_string(factors[i].exponent);
  }
  s += "}";
  if (!complete) s += " cofactor " + std::to_string(cofactor);
  return s;
}

void FactorPolicy::validate() const {
  if (trial_division_bound < 2) throw ConfigError("trial_division_bound must be >= 2");
  if (rho_max_iterations < 1) throw ConfigError("rho_max_iterations must be positive");
  if (digit_threshold < 1) throw ConfigError("digit_threshold must be positive");
}

unsigned decimal_digits(std::uint64_t n) {
  unsigned d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

Factorization trial_division(std::uint64_t n) {
  if (n == 0) throw DomainError("trial_division: n must be >= 1");
  std::map<std::uint64_t, unsigned> found;
  strip_small(n, n, found);
  return from_map(found);
}

std::optional<std::uint64_t> pollard_rho(std::uint64_t n, std::uint64_t max_iterations, std::uint64_t increment) {
  if (n < 4) throw DomainError("pollard_rho: n must be a composite >= 4");
  if (n % 2 == 0) throw DomainError("pollard_rho: strip the factor 2 before calling");
  const std::uint64_t c = increment % n;
  auto step = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
  std::uint64_t tortoise = 2;
  std::uint64_t hare = 2;
  for (std::uint64_t i = 0; i < max_iterations; ++i) {
    tortoise = step(tortoise);
    hare = step(step(hare));
    const std::uint64_t diff = tortoise > hare ? tortoise - hare : hare - tortoise;
    const std::uint64_t d = gcd(diff, n);
    if (d == 1) continue;
    if (d == n) return std::nullopt;
    return d;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> pollard_p_minus_1(std::uint64_t n, std::uint64_t smoothness_bound) {
  if (n < 4 || n % 2 == 0) throw DomainError("pollard_p_minus_1: n must be an odd composite");
  std::vector<bool> sieve(smoothness_bound + 1, true);
  std::uint64_t a = 2;
  for (std::uint64_t q = 2; q <= smoothness_bound; ++q) {
    if (!sieve[q]) continue;
    for (std::uint64_t k = q * q; k <= smoothness_bound; k += q) sieve[k] = false;
    std::uint64_t qe = q;
    while (qe <= smoothness_bound / q) qe *= q;
    a = pow_mod(a, qe, n);
    const std::uint64_t g = gcd(a == 0 ? n : a - 1, n);
    if (g == n) return std::nullopt;
    if (g > 1) return g;
  }
  return std::nullopt;
}

Factorization factor(std::uint64_t n, const FactorPolicy& policy) {
  if (n == 0) throw DomainError("factor: n must be >= 1");
  if (n == 1) return {};

  std::map<std::uint64_t, unsigned> found;
  if (policy.mode == FactorMode::limited) {
    const auto [rest, resolved] = strip_small(n, policy.trial_division_bound, found);
    Factorization out = from_map(found);
    if (!resolved) {
      out.complete = false;
      out.cofactor = rest;
    }
    return out;
  }

  if (decimal_digits(n) < policy.digit_threshold) return trial_division(n);

  const auto [rest, resolved] = strip_small(n, policy.trial_division_bound, found);
  if (!resolved) split_composite(rest, policy, found);
  return from_map(found);
}

NoisySearchResult noisy_factor_search(double noisy_norm, const Factorization& true_factors,
                                      std::uint64_t tolerance, const FactorPolicy& policy) {
  if (!true_factors.complete) throw DomainError("noisy_factor_search: true factorization must be complete");
  if (!std::isfinite(noisy_norm)) return {};

  // Centre of the ring, clamped to [1, 2^62] so the offset arithmetic below stays exact.
  constexpr double kCeiling = 4.611686018427387904e18;
  const std::uint64_t centre =
      noisy_norm >= kCeiling ? std::uint64_t{1} << 62
                             : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(std::max(0.0, noisy_norm))));

  // Unique factorization: a complete factorization equals `true_factors` only for the
  // candidate equal to their product, so that is the single ring member worth factoring.
  const std::uint64_t target = true_factors.product();
  const std::uint64_t distance = target > centre ? target - centre : centre - target;
  if (distance > tolerance) return {};

  const Factorization candidate = factor(target, policy);
  if (!candidate.complete || candidate != true_factors) return {};
  return {true, target};
}

}  // namespace afc::factorint
