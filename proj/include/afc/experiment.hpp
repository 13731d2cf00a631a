// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afc/harness.hpp"

namespace afc::experiment {

enum class Preset { sweep_error, sweep_distance, sweep_tolerance, compare_limited, compare_nodes, single_run };

std::string_view to_string(Preset p);
/// Accepts the dashed CLI spelling, e.g. "sweep-error". Throws ConfigError otherwise.
Preset parse_preset(std::string_view name);
const std::vector<Preset>& all_presets();

/// Distance grid of the distance preset, in meters.
const std::vector<double>& distance_grid();
/// Tolerance grid of the tolerance preset.
const std::vector<std::uint64_t>& tolerance_grid();

/// Reference defaults with the preset's overrides applied.
harness::SimulationConfig preset_config(Preset p);
harness::SweepParameter preset_sweep(Preset p);

/// Applies one `key = value` setting. Lists are `a,b,c` or `first:last:points`.
/// Throws ConfigError naming the key on unknown keys or malformed values.
void apply_setting(harness::SimulationConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines (`#` starts a comment, blank lines ignored).
void apply_config_text(harness::SimulationConfig& config, std::string_view text, std::string_view origin = "config");
/// Throws IoError when the file cannot be read.
void apply_config_file(harness::SimulationConfig& config, const std::string& path);

/// Every key of the effective config, in a form apply_config_text reads back exactly.
std::string serialize(const harness::SimulationConfig& config);

/// One output line; see csv_header() for the column order.
struct ResultRow {
  std::string experiment;
  std::string sweep_param_name;
  double sweep_value = 0.0;
  double k_factor = 0.0;
  std::size_t node_count = 0;
  std::uint64_t tolerance = 0;
  std::string policy_mode;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0.0;
  double ci95 = 0.0;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Validates every sub-configuration up front, then runs the preset's sweep(s).
/// compare-limited emits an unlimited block followed by a limited block and
/// compare-nodes a 2-node block followed by a 3-node block, all with the same seed.
std::vector<ResultRow> run_experiment(Preset preset, const harness::SimulationConfig& config,
                                      const harness::RunOptions& options = {});

/// One line per K factor: min/max success rate over the rows with that K.
std::vector<std::string> summarize(const std::vector<ResultRow>& rows);

}  // namespace afc::experiment
