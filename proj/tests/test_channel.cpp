// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "afc/channel.hpp"
#include "afc/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace afc::channel;
using afc::ComplexSample;
using afc::RandomStream;

namespace {

std::vector<ComplexSample> draw(double k, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  const RicianParams params(k);
  std::vector<ComplexSample> out(n);
  for (auto& g : out) g = sample_small_scale(params, rng);
  return out;
}

}  // namespace

TEST_CASE("RicianParams normalization") {
  for (double k : {0.0, 0.5, 3.0, 20.0, 1e6}) {
    const RicianParams p(k);
    CHECK(p.los_amplitude() * p.los_amplitude() + p.diffuse_power() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.recovered_k() == doctest::Approx(k).epsilon(1e-12));
  }
  CHECK(RicianParams(0.0).los_amplitude() == 0.0);
  CHECK_THROWS_AS(RicianParams(-1.0), afc::ConfigError);
  CHECK_THROWS_AS(RicianParams(std::nan("")), afc::ConfigError);
}

TEST_CASE("K -> infinity gives the pure LOS gain") {
  RandomStream rng(1);
  const RicianParams p(std::numeric_limits<double>::infinity());
  for (int i = 0; i < 100; ++i) CHECK(sample_small_scale(p, rng) == ComplexSample(1.0, 0.0));
}

TEST_CASE("unit mean power and K recovery over 10^6 draws") {
  for (double k : {0.0, 3.0, 20.0}) {
    const auto g = draw(k, 1'000'000, 100 + static_cast<std::uint64_t>(k));
    std::vector<double> power(g.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      power[i] = std::norm(g[i]);
      mean += power[i];
    }
    mean /= static_cast<double>(g.size());
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
    if (k > 0) CHECK(afc::testing::moment_k_estimate(power) == doctest::Approx(k).epsilon(0.05));
  }
}

TEST_CASE("K = 0 envelope is Rayleigh") {
  const auto g = draw(0.0, 100'000, 7);
  std::vector<double> env;
  for (auto s : g) env.push_back(std::abs(s));
  // Rayleigh with E|g|^2 = 1: F(x) = 1 - exp(-x^2).
  const double d = afc::testing::ks_statistic(env, [](double x) { return 1.0 - std::exp(-x * x); });
  CHECK(d < afc::testing::ks_critical_1pct(env.size()));
}

TEST_CASE("envelope follows the Rician density") {
  for (double k : {3.0, 20.0}) {
    const RicianParams p(k);
    const afc::testing::RicianCdfTable cdf(p.los_amplitude(), p.scale(), 4.0, 40000);
    CHECK(cdf.total() == doctest::Approx(1.0).epsilon(1e-9));
    const auto g = draw(k, 100'000, 31);
    std::vector<double> env;
    for (auto s : g) env.push_back(std::abs(s));
    CHECK(afc::testing::ks_statistic(env, cdf) < afc::testing::ks_critical_1pct(env.size()));
  }
}

TEST_CASE("pathloss_amplitude") {
  Geometry geom;
  geom.wavelength = 0.125;
  const double a = pathloss_amplitude(15.0, geom, PathlossMode::physical);
  CHECK(a == doctest::Approx(6.631e-4).epsilon(1e-3));
  CHECK(a * a == doctest::Approx(4.397e-7).epsilon(1e-3));
  CHECK(a == doctest::Approx(0.125 / (4.0 * std::numbers::pi * 15.0)).epsilon(1e-15));
  CHECK(pathloss_amplitude(1.0, geom, PathlossMode::normalized) == 1.0);
  CHECK(pathloss_amplitude(150.0, geom, PathlossMode::normalized) == doctest::Approx(6.667e-3).epsilon(1e-3));
  geom.tx_gain = 4.0;
  CHECK(pathloss_amplitude(15.0, geom, PathlossMode::physical) == doctest::Approx(2.0 * a));
  CHECK_THROWS_AS(pathloss_amplitude(0.0, geom, PathlossMode::physical), afc::DomainError);
  CHECK_THROWS_AS(pathloss_amplitude(-3.0, geom, PathlossMode::normalized), afc::DomainError);
}

TEST_CASE("Geometry") {
  const Geometry tri = Geometry::regular(3, 15.0, 0.125);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(tri.distance(i, j) == doctest::Approx(15.0));
  }
  CHECK_NOTHROW(tri.validate());
  Geometry bad;
  bad.positions = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(bad.validate(), afc::ConfigError);
  bad.positions = {{0, 0}};
  CHECK_THROWS_AS(bad.validate(), afc::ConfigError);
  CHECK_THROWS_AS(Geometry::regular(2, 0.0, 0.125), afc::ConfigError);
}

TEST_CASE("realize") {
  RandomStream rng(5);
  const RicianParams params(3.0);

  SUBCASE("link counts and reciprocity") {
    const auto two = realize(Geometry::regular(2, 15, 0.125), params, 0.05, PathlossMode::normalized, rng);
    CHECK(two.link_count() == 1);
    const auto three = realize(Geometry::regular(3, 15, 0.125), params, 0.05, PathlossMode::normalized, rng);
    CHECK(three.link_count() == 3);
    const auto four = realize(Geometry::regular(4, 15, 0.125), params, 0.05, PathlossMode::normalized, rng);
    CHECK(four.link_count() == 6);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        CHECK(&four.link(i, j) == &four.link(j, i));
        CHECK(four.link(i, j).true_gain == four.link(j, i).true_gain);
      }
    }
    CHECK_THROWS_AS(four.link(2, 2), afc::DomainError);
  }

  SUBCASE("zero estimation error") {
    const auto r = realize(Geometry::regular(3, 15, 0.125), params, 0.0, PathlossMode::normalized, rng);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        CHECK(r.link(i, j).estimated_gain == r.link(i, j).true_gain);
        CHECK(r.link(i, j).pathloss_amplitude == doctest::Approx(1.0 / 15.0));
      }
    }
  }

  SUBCASE("estimation error variance") {
    double sum = 0.0;
    const std::size_t n = 100'000;
    const Geometry geom = Geometry::regular(2, 15, 0.125);
    for (std::size_t t = 0; t < n; ++t) {
      const auto r = realize(geom, params, 0.05, PathlossMode::normalized, rng);
      sum += std::norm(r.link(0, 1).estimated_gain - r.link(0, 1).true_gain);
    }
    CHECK(sum / static_cast<double>(n) == doctest::Approx(2.5e-3).epsilon(0.05));
  }

  SUBCASE("draws do not depend on sigma_h") {
    RandomStream a(77), b(77);
    const Geometry geom = Geometry::regular(3, 15, 0.125);
    const auto ra = realize(geom, params, 0.01, PathlossMode::normalized, a);
    const auto rb = realize(geom, params, 0.1, PathlossMode::normalized, b);
    CHECK(ra.link(0, 2).true_gain == rb.link(0, 2).true_gain);
    const ComplexSample ea = ra.link(0, 2).estimated_gain - ra.link(0, 2).true_gain;
    const ComplexSample eb = rb.link(0, 2).estimated_gain - rb.link(0, 2).true_gain;
    CHECK(std::abs(ea * 10.0 - eb) < 1e-12);
    CHECK(a() == b());
  }
}
