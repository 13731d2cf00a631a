// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "afc/errors.hpp"
#include "afc/protocol.hpp"
#include "afc/rng.hpp"

namespace afc::harness {

std::string_view to_string(SuccessScope scope) {
  switch (scope) {
    case SuccessScope::all_nodes: return "all_nodes";
    case SuccessScope::any_node: return "any_node";
    case SuccessScope::node_0: return "node_0";
  }
  return "?";
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::sigma_h: return "sigma_h";
    case SweepParameter::distance: return "distance";
    case SweepParameter::tolerance: return "tolerance";
  }
  return "?";
}

std::vector<double> linspace(double first, double last, std::size_t points) {
  if (points == 0) throw ConfigError("a sweep needs at least one point");
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = first;
    return out;
  }
  const double step = (last - first) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = first + step * static_cast<double>(i);
  out.back() = last;
  return out;
}

SweepParameter SimulationConfig::sweep_parameter(SweepParameter fallback) const {
  std::vector<SweepParameter> lists;
  if (sigma_h.size() > 1) lists.push_back(SweepParameter::sigma_h);
  if (distance_m.size() > 1) lists.push_back(SweepParameter::distance);
  if (tolerance.size() > 1) lists.push_back(SweepParameter::tolerance);
  if (lists.size() > 1) {
    std::string names;
    for (auto p : lists) {
      if (!names.empty()) names += ", ";
      names += to_string(p);
    }
    throw ConfigError("conflicting sweep definitions: " + names + " are all lists; sweep exactly one");
  }
  return lists.empty() ? fallback : lists.front();
}

std::vector<double> SimulationConfig::sweep_values(SweepParameter p) const {
  switch (p) {
    case SweepParameter::sigma_h: return sigma_h;
    case SweepParameter::distance: return distance_m;
    case SweepParameter::tolerance: {
      std::vector<double> out;
      for (auto t : tolerance) out.push_back(static_cast<double>(t));
      return out;
    }
  }
  return {};
}

void SimulationConfig::validate() const {
  if (trials == 0) throw ConfigError("trials: must be positive");
  if (node_count < 2) throw ConfigError("nodes: need at least 2 nodes");
  if (!(sigma_n >= 0.0) || !std::isfinite(sigma_n)) throw ConfigError("sigma_n: must be a finite non-negative number");
  if (sigma_h.empty()) throw ConfigError("sigma_h: empty list");
  for (double s : sigma_h) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("sigma_h: values must be finite and non-negative");
  }
  if (distance_m.empty()) throw ConfigError("distance: empty list");
  for (double d : distance_m) {
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("distance: values must be finite and positive");
  }
  if (tolerance.empty()) throw ConfigError("tolerance: empty list");
  if (k_factors.empty()) throw ConfigError("k_factor: empty list");
  for (double k : k_factors) {
    if (!(k >= 0.0)) throw ConfigError("k_factor: values must be non-negative");
  }
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) throw ConfigError("carrier_hz: must be positive");
  if (!(tx_gain > 0.0) || !(rx_gain > 0.0)) throw ConfigError("tx_gain/rx_gain: must be positive");
  policy.validate();
  (void)sweep_parameter();
}

SweepPointResult SweepPointResult::from_counts(double sweep_value, double k_factor, std::uint64_t successes,
                                               std::uint64_t trials) {
  SweepPointResult r;
  r.sweep_value = sweep_value;
  r.k_factor = k_factor;
  r.successes = successes;
  r.trials = trials;
  r.success_rate = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  r.ci95_halfwidth =
      trials == 0 ? 0.0 : 1.96 * std::sqrt(r.success_rate * (1.0 - r.success_rate) / static_cast<double>(trials));
  return r;
}

namespace {

gaussint::PrimePool build_pool(const SimulationConfig& config) {
  config.validate();
  gaussint::PrimePool pool = gaussint::generate_pool(config.pool_min, config.pool_max);
  if (pool.size() < config.node_count) {
    throw ConfigError("nodes: " + std::to_string(config.node_count) + " nodes need distinct primes but the pool [" +
                      std::to_string(config.pool_min) + ", " + std::to_string(config.pool_max) + "] holds only " +
                      std::to_string(pool.size()));
  }
  pool.check_products_fit(config.node_count);
  return pool;
}

// Runs fn(begin, end) over [0, total) in fixed-size chunks on `workers` threads.
template <typename Fn>
void parallel_chunks(std::uint64_t total, unsigned workers, Fn&& fn) {
  constexpr std::uint64_t kChunk = 128;
  workers = std::max(1U, workers);
  std::atomic<std::uint64_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= total) return;
      fn(begin, std::min(total, begin + kChunk));
    }
  };
  if (workers == 1) {
    body();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
}

}  // namespace

Simulator::Simulator(SimulationConfig config, SweepParameter fallback)
    : config_(std::move(config)),
      sweep_parameter_(config_.sweep_parameter(fallback)),
      pool_(build_pool(config_)),
      truth_policy_(config_.policy) {
  truth_policy_.mode = factorint::FactorMode::unlimited;
}

std::vector<Cell> Simulator::cells() const {
  std::vector<Cell> out;
  for (double v : config_.sweep_values(sweep_parameter_)) {
    for (std::size_t k = 0; k < config_.k_factors.size(); ++k) {
      Cell c;
      c.sweep_value = v;
      c.sigma_h = config_.sigma_h.front();
      c.distance_m = config_.distance_m.front();
      c.tolerance = config_.tolerance.front();
      switch (sweep_parameter_) {
        case SweepParameter::sigma_h: c.sigma_h = v; break;
        case SweepParameter::distance: c.distance_m = v; break;
        case SweepParameter::tolerance: c.tolerance = static_cast<std::uint64_t>(v); break;
      }
      c.k_factor = config_.k_factors[k];
      c.k_index = k;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<bool> Simulator::run_trial(const Cell& cell, std::uint64_t trial_index) const {
  RandomStream rng = derive_stream(config_.master_seed, cell.k_index, trial_index);
  const std::size_t n = config_.node_count;

  // Distinct primes: partial Fisher-Yates over pool indices.
  std::vector<std::size_t> idx(pool_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<protocol::NodeState> nodes;
  nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) nodes.emplace_back(i, pool_[idx[i]]);

  const channel::Geometry geom = channel::Geometry::regular(n, cell.distance_m, config_.wavelength(),
                                                            config_.tx_gain, config_.rx_gain);
  const channel::RicianParams params(cell.k_factor);
  const channel::ChannelRealization realization = channel::realize(geom, params, cell.sigma_h, config_.pathloss, rng);
  const protocol::RoundOutcome outcome = protocol::run_round(nodes, realization, config_.sigma_n, rng);

  const factorint::Factorization truth = factorint::factor(outcome.true_norm, truth_policy_);
  std::vector<bool> flags(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    const protocol::NodeResult& res = outcome.nodes[j];
    if (res.failed) continue;
    flags[j] = factorint::noisy_factor_search(res.noisy_norm, truth, cell.tolerance, config_.policy).success;
  }
  return flags;
}

bool Simulator::trial_succeeded(const std::vector<bool>& per_node) const {
  switch (config_.success_scope) {
    case SuccessScope::all_nodes: return std::all_of(per_node.begin(), per_node.end(), [](bool b) { return b; });
    case SuccessScope::any_node: return std::any_of(per_node.begin(), per_node.end(), [](bool b) { return b; });
    case SuccessScope::node_0: return !per_node.empty() && per_node.front();
  }
  return false;
}

std::vector<bool> Simulator::trial_successes(const Cell& cell, unsigned workers) const {
  std::vector<char> hits(config_.trials, 0);
  parallel_chunks(config_.trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) hits[t] = trial_succeeded(run_trial(cell, t)) ? 1 : 0;
  });
  return {hits.begin(), hits.end()};
}

std::vector<SweepPointResult> Simulator::run_sweep(const RunOptions& options) const {
  const std::vector<Cell> grid = cells();
  const std::uint64_t trials = config_.trials;
  const std::uint64_t total = trials * grid.size();

  std::vector<std::atomic<std::uint64_t>> successes(grid.size());
  std::vector<std::atomic<std::uint64_t>> finished(grid.size());
  std::atomic<std::size_t> points_done{0};
  std::mutex progress_mutex;

  parallel_chunks(total, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t job = begin; job < end;) {
      const std::size_t c = job / trials;
      const std::uint64_t stop = std::min(end, (c + 1) * trials);
      std::uint64_t local = 0;
      for (; job < stop; ++job) local += trial_succeeded(run_trial(grid[c], job % trials)) ? 1 : 0;
      successes[c] += local;
      const std::uint64_t count = stop - (begin > c * trials ? begin : c * trials);
      if (finished[c].fetch_add(count) + count == trials && options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(++points_done, grid.size());
      }
    }
  });

  std::vector<SweepPointResult> out;
  out.reserve(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    out.push_back(SweepPointResult::from_counts(grid[c].sweep_value, grid[c].k_factor, successes[c], trials));
  }
  return out;
}

std::vector<SweepPointResult> run_sweep(const SimulationConfig& config, const RunOptions& options) {
  return Simulator(config).run_sweep(options);
}

double plateau_oracle(const gaussint::PrimePool& pool, std::size_t node_count, std::uint64_t tolerance) {
  if (pool.size() == 0) throw ConfigError("plateau_oracle: empty pool");
  if (node_count < 2) throw ConfigError("plateau_oracle: need at least 2 nodes");
  if (node_count > pool.size()) return 0.0;

  std::vector<std::uint64_t> norms;
  for (const auto& g : pool.members()) norms.push_back(gaussint::norm(g));

  // Depth-first over ordered draws without replacement; slot 0 is the reference node.
  std::uint64_t hits = 0, total = 0;
  std::vector<bool> used(norms.size(), false);
  auto walk = [&](auto&& self, std::size_t depth, std::uint64_t own, std::uint64_t prod) -> void {
    if (depth == node_count) {
      ++total;
      if (prod - own <= tolerance) ++hits;
      return;
    }
    for (std::size_t i = 0; i < norms.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      self(self, depth + 1, depth == 0 ? norms[i] : own, prod * norms[i]);
      used[i] = false;
    }
  };
  walk(walk, 0, 0, 1);
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace afc::harness
