// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace afc::gaussint {

/// Exact Gaussian integer re + im*i. Arithmetic is overflow-checked and throws
/// afc::OverflowError instead of wrapping.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  std::string to_string() const;
};

std::uint64_t norm(GaussianInt x);
GaussianInt mul(GaussianInt x, GaussianInt y);
GaussianInt product(std::span<const GaussianInt> xs);

bool is_gaussian_prime(GaussianInt x);

/// First-quadrant degree-one Gaussian primes, one per rational prime q = 1 (mod 4)
/// in [norm_min, norm_max], sorted by norm.
class PrimePool {
 public:
  PrimePool(std::int64_t norm_min, std::int64_t norm_max, std::vector<GaussianInt> members);

  std::span<const GaussianInt> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const GaussianInt& operator[](std::size_t i) const { return members_[i]; }
  std::int64_t norm_min() const { return norm_min_; }
  std::int64_t norm_max() const { return norm_max_; }

  /// Largest norm product over any `count` distinct members.
  std::uint64_t max_product_norm(std::size_t count) const;

  /// Throws OverflowError unless every product of `count` distinct members and
  /// its norm fit in 64 bits.
  void check_products_fit(std::size_t count) const;

 private:
  std::int64_t norm_min_;
  std::int64_t norm_max_;
  std::vector<GaussianInt> members_;
};

PrimePool generate_pool(std::int64_t norm_min, std::int64_t norm_max);

}  // namespace afc::gaussint
