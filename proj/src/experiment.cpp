// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "afc/errors.hpp"

namespace afc::experiment {

using harness::SimulationConfig;
using harness::SweepParameter;

namespace {

struct PresetName {
  Preset preset;
  std::string_view name;
};

constexpr PresetName kPresetNames[] = {
    {Preset::sweep_error, "sweep-error"},         {Preset::sweep_distance, "sweep-distance"},
    {Preset::sweep_tolerance, "sweep-tolerance"}, {Preset::compare_limited, "compare-limited"},
    {Preset::compare_nodes, "compare-nodes"},     {Preset::single_run, "single-run"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("malformed value for '" + std::string(key) + "': '" + std::string(value) + "' (" +
                    std::string(why) + ")");
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) malformed(key, text, "expected a number");
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    malformed(key, text, "expected a non-negative integer");
  }
  return v;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) malformed(key, text, "expected an integer");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

// `x`, `a,b,c`, or `first:last:points`.
std::vector<double> parse_double_list(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value.empty()) malformed(key, value, "empty list");
  if (value.find(':') != std::string_view::npos) {
    const auto parts = split(value, ':');
    if (parts.size() != 3) malformed(key, value, "range must be first:last:points");
    const std::uint64_t points = parse_uint(key, parts[2]);
    if (points == 0) malformed(key, value, "range needs at least one point");
    return harness::linspace(parse_double(key, parts[0]), parse_double(key, parts[1]), points);
  }
  std::vector<double> out;
  for (auto part : split(value, ',')) out.push_back(parse_double(key, part));
  return out;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value.find(':') != std::string_view::npos) {
    std::vector<std::uint64_t> out;
    for (double v : parse_double_list(key, value)) {
      if (!(v >= 0.0)) malformed(key, value, "values must be non-negative");
      out.push_back(static_cast<std::uint64_t>(std::llround(v)));
    }
    return out;
  }
  if (value.empty()) malformed(key, value, "empty list");
  std::vector<std::uint64_t> out;
  for (auto part : split(value, ',')) out.push_back(parse_uint(key, part));
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename Fmt>
std::string join(const std::vector<T>& xs, Fmt fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt(xs[i]);
  }
  return out;
}

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Preset p) {
  for (const auto& e : kPresetNames) {
    if (e.preset == p) return e.name;
  }
  return "?";
}

Preset parse_preset(std::string_view name) {
  for (const auto& e : kPresetNames) {
    if (e.name == name) return e.preset;
  }
  std::string known;
  for (const auto& e : kPresetNames) known += (known.empty() ? "" : ", ") + std::string(e.name);
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected one of: " + known + ")");
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> kAll = {Preset::sweep_error,     Preset::sweep_distance, Preset::sweep_tolerance,
                                           Preset::compare_limited, Preset::compare_nodes,  Preset::single_run};
  return kAll;
}

const std::vector<double>& distance_grid() {
  static const std::vector<double> kGrid = {1, 5, 10, 25, 50, 75, 100, 125, 150};
  return kGrid;
}

const std::vector<std::uint64_t>& tolerance_grid() {
  static const std::vector<std::uint64_t> kGrid = {0, 500, 1500, 3000};
  return kGrid;
}

SimulationConfig preset_config(Preset p) {
  SimulationConfig c;
  switch (p) {
    case Preset::sweep_distance:
      c.sigma_h = {0.03};
      c.distance_m = distance_grid();
      break;
    case Preset::sweep_tolerance:
      c.sigma_h = {0.05};
      c.tolerance = tolerance_grid();
      break;
    case Preset::single_run:
      c.sigma_h = {0.03};
      break;
    case Preset::sweep_error:
    case Preset::compare_limited:
    case Preset::compare_nodes:
      break;
  }
  return c;
}

SweepParameter preset_sweep(Preset p) {
  switch (p) {
    case Preset::sweep_distance: return SweepParameter::distance;
    case Preset::sweep_tolerance: return SweepParameter::tolerance;
    default: return SweepParameter::sigma_h;
  }
}

void apply_setting(SimulationConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "trials") {
    c.trials = parse_uint(key, value);
  } else if (key == "nodes") {
    c.node_count = parse_uint(key, value);
  } else if (key == "seed") {
    c.master_seed = parse_uint(key, value);
  } else if (key == "sigma_n") {
    c.sigma_n = parse_double(key, value);
  } else if (key == "sigma_h") {
    c.sigma_h = parse_double_list(key, value);
  } else if (key == "distance") {
    c.distance_m = parse_double_list(key, value);
  } else if (key == "tolerance") {
    c.tolerance = parse_uint_list(key, value);
  } else if (key == "k_factor") {
    c.k_factors = parse_double_list(key, value);
  } else if (key == "carrier_hz") {
    c.carrier_hz = parse_double(key, value);
  } else if (key == "tx_gain") {
    c.tx_gain = parse_double(key, value);
  } else if (key == "rx_gain") {
    c.rx_gain = parse_double(key, value);
  } else if (key == "pool_min") {
    c.pool_min = parse_int(key, value);
  } else if (key == "pool_max") {
    c.pool_max = parse_int(key, value);
  } else if (key == "pathloss") {
    if (value == "physical") c.pathloss = channel::PathlossMode::physical;
    else if (value == "normalized") c.pathloss = channel::PathlossMode::normalized;
    else malformed(key, value, "expected physical or normalized");
  } else if (key == "policy") {
    if (value == "unlimited") c.policy.mode = factorint::FactorMode::unlimited;
    else if (value == "limited") c.policy.mode = factorint::FactorMode::limited;
    else malformed(key, value, "expected unlimited or limited");
  } else if (key == "success_scope") {
    if (value == "all_nodes") c.success_scope = harness::SuccessScope::all_nodes;
    else if (value == "any_node") c.success_scope = harness::SuccessScope::any_node;
    else if (value == "node_0") c.success_scope = harness::SuccessScope::node_0;
    else malformed(key, value, "expected all_nodes, any_node or node_0");
  } else if (key == "trial_division_bound") {
    c.policy.trial_division_bound = parse_uint(key, value);
  } else if (key == "rho_max_iterations") {
    c.policy.rho_max_iterations = parse_uint(key, value);
  } else if (key == "digit_threshold") {
    c.policy.digit_threshold = static_cast<unsigned>(parse_uint(key, value));
  } else if (key == "p_minus_1_bound") {
    c.policy.p_minus_1_bound = parse_uint(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void apply_config_text(SimulationConfig& config, std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value', got '" +
                        std::string(line) + "'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(SimulationConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path);
}

std::string serialize(const SimulationConfig& c) {
  std::ostringstream out;
  out << "trials = " << c.trials << "\n"
      << "nodes = " << c.node_count << "\n"
      << "seed = " << c.master_seed << "\n"
      << "sigma_n = " << format_double(c.sigma_n) << "\n"
      << "sigma_h = " << join(c.sigma_h, format_double) << "\n"
      << "distance = " << join(c.distance_m, format_double) << "\n"
      << "tolerance = " << join(c.tolerance, [](std::uint64_t v) { return std::to_string(v); }) << "\n"
      << "k_factor = " << join(c.k_factors, format_double) << "\n"
      << "carrier_hz = " << format_double(c.carrier_hz) << "\n"
      << "tx_gain = " << format_double(c.tx_gain) << "\n"
      << "rx_gain = " << format_double(c.rx_gain) << "\n"
      << "pool_min = " << c.pool_min << "\n"
      << "pool_max = " << c.pool_max << "\n"
      << "pathloss = " << (c.pathloss == channel::PathlossMode::physical ? "physical" : "normalized") << "\n"
      << "policy = " << (c.policy.mode == factorint::FactorMode::limited ? "limited" : "unlimited") << "\n"
      << "success_scope = " << harness::to_string(c.success_scope) << "\n"
      << "trial_division_bound = " << c.policy.trial_division_bound << "\n"
      << "rho_max_iterations = " << c.policy.rho_max_iterations << "\n"
      << "digit_threshold = " << c.policy.digit_threshold << "\n"
      << "p_minus_1_bound = " << c.policy.p_minus_1_bound << "\n";
  return out.str();
}

std::string csv_header() {
  return "experiment,sweep_param_name,sweep_value,k_factor,node_count,tolerance,policy_mode,trials,successes,"
         "success_rate,ci95";
}

std::string csv_line(const ResultRow& r) {
  std::string s;
  s += r.experiment + "," + r.sweep_param_name + "," + sig6(r.sweep_value) + "," + sig6(r.k_factor) + ",";
  s += std::to_string(r.node_count) + "," + std::to_string(r.tolerance) + "," + r.policy_mode + ",";
  s += std::to_string(r.trials) + "," + std::to_string(r.successes) + "," + sig6(r.success_rate) + "," + sig6(r.ci95);
  return s;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
  if (!out) throw IoError("failed writing CSV output");
}

std::vector<ResultRow> run_experiment(Preset preset, const SimulationConfig& config,
                                      const harness::RunOptions& options) {
  std::vector<SimulationConfig> blocks;
  switch (preset) {
    case Preset::compare_limited: {
      SimulationConfig unlimited = config, limited = config;
      unlimited.policy.mode = factorint::FactorMode::unlimited;
      limited.policy.mode = factorint::FactorMode::limited;
      blocks = {unlimited, limited};
      break;
    }
    case Preset::compare_nodes: {
      SimulationConfig two = config, three = config;
      two.node_count = 2;
      three.node_count = 3;
      blocks = {two, three};
      break;
    }
    default:
      blocks = {config};
  }

  // Build (and so validate) every block before any trial runs.
  std::vector<harness::Simulator> sims;
  sims.reserve(blocks.size());
  for (auto& b : blocks) sims.emplace_back(b, preset_sweep(preset));

  std::vector<ResultRow> rows;
  for (const auto& sim : sims) {
    const SimulationConfig& c = sim.config();
    const SweepParameter sweep = sim.sweep_parameter();
    for (const auto& point : sim.run_sweep(options)) {
      ResultRow row;
      row.experiment = std::string(to_string(preset));
      row.sweep_param_name = std::string(harness::to_string(sweep));
      row.sweep_value = point.sweep_value;
      row.k_factor = point.k_factor;
      row.node_count = c.node_count;
      row.tolerance = sweep == SweepParameter::tolerance ? static_cast<std::uint64_t>(point.sweep_value)
                                                         : c.tolerance.front();
      row.policy_mode = c.policy.mode == factorint::FactorMode::limited ? "limited" : "unlimited";
      row.trials = point.trials;
      row.successes = point.successes;
      row.success_rate = point.success_rate;
      row.ci95 = point.ci95_halfwidth;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<std::string> summarize(const std::vector<ResultRow>& rows) {
  struct Range {
    double lo = 1.0, hi = 0.0;
    std::size_t points = 0;
  };
  std::map<std::tuple<std::string, std::size_t, double>, Range> groups;
  std::vector<std::tuple<std::string, std::size_t, double>> order;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.policy_mode, r.node_count, r.k_factor);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.lo = std::min(it->second.lo, r.success_rate);
    it->second.hi = std::max(it->second.hi, r.success_rate);
    ++it->second.points;
  }
  std::vector<std::string> out;
  for (const auto& key : order) {
    const Range& g = groups.at(key);
    out.push_back("K=" + sig6(std::get<2>(key)) + " nodes=" + std::to_string(std::get<1>(key)) +
                  " policy=" + std::get<0>(key) + ": min_rate=" + sig6(g.lo) + " max_rate=" + sig6(g.hi) + " over " +
                  std::to_string(g.points) + " points");
  }
  return out;
}

}  // namespace afc::experiment
