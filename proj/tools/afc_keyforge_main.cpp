// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

// afc-keyforge: runs one experiment preset and writes its success-rate CSV.
// Exit status: 0 success, 1 usage or configuration error, 2 I/O or runtime error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afc_keyforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct ConfigDeleter {
  void operator()(afc_config* c) const { afc_config_destroy(c); }
};
struct ResultDeleter {
  void operator()(afc_result_set* r) const { afc_result_set_destroy(r); }
};

int exit_code_for(afc_status status) {
  return status == AFC_ERR_CONFIG || status == AFC_ERR_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
}

int report(afc_status status, const std::string& context) {
  std::cerr << "afc-keyforge: " << context << ": " << afc_last_error() << "\n";
  return exit_code_for(status);
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

void print_progress(void* user_data, size_t finished, size_t total) {
  if (*static_cast<bool*>(user_data)) return;
  std::fprintf(stderr, "\r  sweep point %zu/%zu", finished, total);
  if (finished == total) std::fputc('\n', stderr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for analog-function-computation secret key generation"};
  app.set_version_flag("--version", std::string(afc_version()));

  std::string preset;
  std::optional<std::string> config_path, trials, nodes, seed, sigma_n, sigma_h, distance, tolerance, pool_min,
      pool_max, pathloss, scope, out_path;
  std::vector<std::string> k_factors;
  bool limited = false;
  bool quiet = false;
  bool print_config = false;
  unsigned workers = 0;

  app.add_option("preset", preset,
                 "sweep-error | sweep-distance | sweep-tolerance | compare-limited | compare-nodes | single-run")
      ->required();
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--trials", trials, "Monte Carlo trials per sweep point");
  app.add_option("--nodes", nodes, "number of nodes");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--sigma-n", sigma_n, "thermal noise standard deviation");
  app.add_option("--sigma-h", sigma_h, "estimation error: X, a,b,c or A:B:STEPS");
  app.add_option("--distance", distance, "node spacing in meters: X, a,b,c or A:B:POINTS");
  app.add_option("--tolerance", tolerance, "factorization tolerance window (integer or list)");
  app.add_option("--k-factor", k_factors, "Rician K-factor (repeatable)");
  app.add_option("--pool-min", pool_min, "smallest prime norm in the pool");
  app.add_option("--pool-max", pool_max, "largest prime norm in the pool");
  app.add_flag("--limited", limited, "limited factorization (trial division only)");
  app.add_option("--pathloss", pathloss, "physical | normalized");
  app.add_option("--scope", scope, "all_nodes | any_node | node_0");
  app.add_option("--out", out_path, "CSV output path (default: standard output)");
  app.add_option("-j,--workers", workers, "worker threads (0 = all cores)");
  app.add_flag("-q,--quiet", quiet, "no progress counter on standard error");
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  afc_config* raw = nullptr;
  if (auto st = afc_config_create(preset.c_str(), &raw); st != AFC_OK) return report(st, "preset");
  std::unique_ptr<afc_config, ConfigDeleter> config(raw);

  if (config_path) {
    if (auto st = afc_config_load_file(config.get(), config_path->c_str()); st != AFC_OK) {
      return report(st, "--config");
    }
  }

  const std::vector<std::pair<const char*, std::optional<std::string>>> overrides = {
      {"trials", trials},
      {"nodes", nodes},
      {"seed", seed},
      {"sigma_n", sigma_n},
      {"sigma_h", sigma_h},
      {"distance", distance},
      {"tolerance", tolerance},
      {"k_factor", k_factors.empty() ? std::nullopt : std::optional(join(k_factors))},
      {"pool_min", pool_min},
      {"pool_max", pool_max},
      {"policy", limited ? std::optional<std::string>("limited") : std::nullopt},
      {"pathloss", pathloss},
      {"success_scope", scope},
  };
  for (const auto& [key, value] : overrides) {
    if (!value) continue;
    if (auto st = afc_config_set(config.get(), key, value->c_str()); st != AFC_OK) {
      return report(st, std::string("--") + key);
    }
  }

  if (auto st = afc_config_validate(config.get()); st != AFC_OK) return report(st, "configuration");

  if (print_config) {
    size_t needed = 0;
    afc_config_serialize(config.get(), nullptr, 0, &needed);
    std::string text(needed, '\0');
    afc_config_serialize(config.get(), text.data(), text.size(), &needed);
    text.resize(needed - 1);
    std::cout << text;
    return kExitOk;
  }

  afc_result_set* raw_results = nullptr;
  if (auto st = afc_experiment_run(config.get(), workers, print_progress, &quiet, &raw_results); st != AFC_OK) {
    return report(st, "simulation");
  }
  std::unique_ptr<afc_result_set, ResultDeleter> results(raw_results);

  const char* target = out_path ? out_path->c_str() : nullptr;
  if (auto st = afc_result_set_write_csv(results.get(), target); st != AFC_OK) return report(st, "writing CSV");

  size_t needed = 0;
  afc_result_set_summary(results.get(), nullptr, 0, &needed);
  std::string summary(needed, '\0');
  afc_result_set_summary(results.get(), summary.data(), summary.size(), &needed);
  summary.resize(needed - 1);
  // Keep standard output pure CSV when the CSV itself goes there.
  (out_path ? std::cout : std::cerr) << summary << std::flush;
  return kExitOk;
}
