// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/gaussint.hpp"

#include <cmath>
#include <limits>

#include "afc/errors.hpp"
#include "afc/primality.hpp"

namespace afc::gaussint {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("gaussian integer product overflows 64 bits");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("gaussian integer sum overflows 64 bits");
  return out;
}

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

}  // namespace

std::string GaussianInt::to_string() const {
  std::string s = std::to_string(re);
  s += im < 0 ? "-" : "+";
  s += std::to_string(magnitude(im));
  s += "i";
  return s;
}

std::uint64_t norm(GaussianInt x) {
  const std::uint64_t a = magnitude(x.re);
  const std::uint64_t b = magnitude(x.im);
  std::uint64_t a2 = 0, b2 = 0, sum = 0;
  if (__builtin_mul_overflow(a, a, &a2) || __builtin_mul_overflow(b, b, &b2) ||
      __builtin_add_overflow(a2, b2, &sum)) {
    throw OverflowError("gaussian integer norm overflows 64 bits (pool too large)");
  }
  return sum;
}

GaussianInt mul(GaussianInt x, GaussianInt y) {
  return {checked_add(checked_mul(x.re, y.re), -checked_mul(x.im, y.im)),
          checked_add(checked_mul(x.re, y.im), checked_mul(x.im, y.re))};
}

GaussianInt product(std::span<const GaussianInt> xs) {
  GaussianInt acc{1, 0};
  for (const auto& x : xs) acc = mul(acc, x);
  return acc;
}

bool is_gaussian_prime(GaussianInt x) {
  if (x.re != 0 && x.im != 0) return numtheory::is_prime(norm(x));
  const std::uint64_t m = magnitude(x.re != 0 ? x.re : x.im);
  return numtheory::is_prime(m) && m % 4 == 3;
}

PrimePool::PrimePool(std::int64_t norm_min, std::int64_t norm_max, std::vector<GaussianInt> members)
    : norm_min_(norm_min), norm_max_(norm_max), members_(std::move(members)) {}

std::uint64_t PrimePool::max_product_norm(std::size_t count) const {
  if (count > members_.size()) throw ConfigError("node count exceeds prime pool size");
  std::uint64_t acc = 1;
  // Members are sorted by norm, so the top `count` give the largest product.
  for (std::size_t i = members_.size() - count; i < members_.size(); ++i) {
    if (__builtin_mul_overflow(acc, norm(members_[i]), &acc)) {
      throw OverflowError("product norm of " + std::to_string(count) + " pool primes overflows 64 bits");
    }
  }
  return acc;
}

void PrimePool::check_products_fit(std::size_t count) const {
  // |re|, |im| <= sqrt(norm) for every partial product, so bounding the norm bounds
  // the components; the norm itself must also leave headroom for the re^2 + im^2 sum.
  const std::uint64_t worst = max_product_norm(count);
  if (worst > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw OverflowError("product norm of " + std::to_string(count) + " pool primes exceeds int64 range");
  }
}

PrimePool generate_pool(std::int64_t norm_min, std::int64_t norm_max) {
  if (norm_min < 5 || norm_min > norm_max) {
    throw ConfigError("prime pool bounds must satisfy 5 <= norm_min <= norm_max (got [" +
                      std::to_string(norm_min) + ", " + std::to_string(norm_max) + "])");
  }
  // Bound the search so a*a cannot overflow.
  if (norm_max > (std::int64_t{1} << 40)) throw ConfigError("prime pool norm_max too large for desk-scale search");

  std::vector<GaussianInt> members;
  for (std::int64_t q = norm_min; q <= norm_max; ++q) {
    if (q % 4 != 1 || !numtheory::is_prime(static_cast<std::uint64_t>(q))) continue;
    // Fermat: exactly one representation a^2 + b^2 = q with a > b > 0.
    for (std::int64_t b = 1; 2 * b * b < q; ++b) {
      const std::int64_t rest = q - b * b;
      auto a = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
      while (a * a > rest) --a;
      while ((a + 1) * (a + 1) <= rest) ++a;
      if (a * a == rest) {
        members.push_back({a, b});
        break;
      }
    }
  }
  if (members.empty()) {
    throw ConfigError("prime pool range [" + std::to_string(norm_min) + ", " + std::to_string(norm_max) +
                      "] contains no rational prime = 1 (mod 4)");
  }
  return PrimePool(norm_min, norm_max, std::move(members));
}

}  // namespace afc::gaussint
