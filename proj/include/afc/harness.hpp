// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "afc/channel.hpp"
#include "afc/factorint.hpp"
#include "afc/gaussint.hpp"

namespace afc::harness {

enum class SuccessScope { all_nodes, any_node, node_0 };
enum class SweepParameter { sigma_h, distance, tolerance };

std::string_view to_string(SuccessScope scope);
std::string_view to_string(SweepParameter p);

/// Inclusive evenly spaced grid; `points` = 1 yields {first}.
std::vector<double> linspace(double first, double last, std::size_t points);

/// Every experiment knob. Defaults are the reference parameter table: T = 20000,
/// gamma_t = 1500, N = 2, sigma_n = 0.01, d = 15 m, sigma_h swept over 0.01..0.1
/// (10 points), K in {0, 3, 20}, f_c = 2.4 GHz.
struct SimulationConfig {
  std::uint64_t trials = 20000;
  std::size_t node_count = 2;
  double sigma_n = 0.01;
  std::vector<double> sigma_h = linspace(0.01, 0.1, 10);
  std::vector<double> distance_m = {15.0};
  std::vector<std::uint64_t> tolerance = {1500};
  std::vector<double> k_factors = {0.0, 3.0, 20.0};
  double carrier_hz = 2.4e9;
  double tx_gain = 1.0;
  double rx_gain = 1.0;
  std::int64_t pool_min = 5;
  std::int64_t pool_max = 61;
  channel::PathlossMode pathloss = channel::PathlossMode::normalized;
  factorint::FactorPolicy policy{};
  SuccessScope success_scope = SuccessScope::all_nodes;
  std::uint64_t master_seed = 20240601;

  double wavelength() const { return channel::kSpeedOfLight / carrier_hz; }

  /// The parameter holding more than one value, or `fallback` when none does.
  /// Throws ConfigError when more than one parameter is a list.
  SweepParameter sweep_parameter(SweepParameter fallback = SweepParameter::sigma_h) const;
  std::vector<double> sweep_values(SweepParameter p) const;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// One sweep coordinate with every swept quantity resolved to a scalar.
struct Cell {
  double sweep_value = 0.0;
  double sigma_h = 0.0;
  double distance_m = 0.0;
  std::uint64_t tolerance = 0;
  double k_factor = 0.0;
  std::size_t k_index = 0;
};

struct SweepPointResult {
  double sweep_value = 0.0;
  double k_factor = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double success_rate = 0.0;
  double ci95_halfwidth = 0.0;

  static SweepPointResult from_counts(double sweep_value, double k_factor, std::uint64_t successes,
                                      std::uint64_t trials);
};

/// Called once per finished sweep point with (finished points, total points).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

struct RunOptions {
  unsigned workers = 1;
  ProgressFn progress;
};

/// Validated configuration plus the prime pool it draws from.
class Simulator {
 public:
  explicit Simulator(SimulationConfig config, SweepParameter fallback = SweepParameter::sigma_h);

  const SimulationConfig& config() const { return config_; }
  const gaussint::PrimePool& pool() const { return pool_; }
  SweepParameter sweep_parameter() const { return sweep_parameter_; }

  /// Sweep values x K factors, ordered by (sweep value, K).
  std::vector<Cell> cells() const;

  /// Per-node recovery flags. A pure function of (config, cell, trial_index): the
  /// random stream is keyed by (master_seed, K index, trial_index) only, so
  /// tolerance, policy and scope comparisons see identical channels and noise.
  std::vector<bool> run_trial(const Cell& cell, std::uint64_t trial_index) const;

  /// Collapses per-node flags according to the success scope.
  bool trial_succeeded(const std::vector<bool>& per_node) const;

  /// Scope-collapsed success of every trial of a cell, indexed by trial.
  std::vector<bool> trial_successes(const Cell& cell, unsigned workers = 1) const;

  std::vector<SweepPointResult> run_sweep(const RunOptions& options = {}) const;

 private:
  SimulationConfig config_;
  SweepParameter sweep_parameter_;
  gaussint::PrimePool pool_;
  factorint::FactorPolicy truth_policy_;
};

std::vector<SweepPointResult> run_sweep(const SimulationConfig& config, const RunOptions& options = {});

/// Probability, over ordered draws of `node_count` distinct pool primes, that the
/// reference node's own norm lies within `tolerance` of the product norm. This is the
/// success probability when the received signal carries no usable information and the
/// recovered key collapses to the node's own prime.
double plateau_oracle(const gaussint::PrimePool& pool, std::size_t node_count, std::uint64_t tolerance);

}  // namespace afc::harness
