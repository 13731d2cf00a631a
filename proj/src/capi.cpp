// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "afc_keyforge.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>
#include <thread>

#include "afc/errors.hpp"
#include "afc/experiment.hpp"

struct afc_config {
  afc::experiment::Preset preset;
  afc::harness::SimulationConfig config;
};

struct afc_result_set {
  std::vector<afc::experiment::ResultRow> rows;
};

namespace {

thread_local std::string g_last_error;

afc_status fail(afc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
afc_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const afc::IoError& e) {
    return fail(AFC_ERR_IO, e.what());
  } catch (const afc::ConfigError& e) {
    return fail(AFC_ERR_CONFIG, e.what());
  } catch (const afc::DomainError& e) {
    return fail(AFC_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AFC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AFC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AFC_ERR_INTERNAL, "unknown error");
  }
}

afc_status copy_out(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buffer) return needed ? AFC_OK : fail(AFC_ERR_INVALID_ARGUMENT, "buffer and needed are both null");
  if (capacity < text.size() + 1) return fail(AFC_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return AFC_OK;
}

std::string csv_text(const afc_result_set& results) {
  std::ostringstream out;
  afc::experiment::write_csv(out, results.rows);
  return out.str();
}

}  // namespace

extern "C" {

const char* afc_version(void) { return "0.1.0"; }

const char* afc_status_string(afc_status status) {
  switch (status) {
    case AFC_OK: return "ok";
    case AFC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AFC_ERR_CONFIG: return "configuration error";
    case AFC_ERR_IO: return "I/O error";
    case AFC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case AFC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* afc_last_error(void) { return g_last_error.c_str(); }

afc_status afc_config_create(const char* preset, afc_config** out) {
  if (!preset || !out) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_create: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto p = afc::experiment::parse_preset(preset);
    *out = new afc_config{p, afc::experiment::preset_config(p)};
    return AFC_OK;
  });
}

void afc_config_destroy(afc_config* config) { delete config; }

afc_status afc_config_clone(const afc_config* config, afc_config** out) {
  if (!config || !out) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_clone: null argument");
  return guarded([&] {
    *out = new afc_config(*config);
    return AFC_OK;
  });
}

afc_status afc_config_load_file(afc_config* config, const char* path) {
  if (!config || !path) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_load_file: null argument");
  return guarded([&] {
    afc::experiment::apply_config_file(config->config, path);
    return AFC_OK;
  });
}

afc_status afc_config_load_text(afc_config* config, const char* text) {
  if (!config || !text) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_load_text: null argument");
  return guarded([&] {
    afc::experiment::apply_config_text(config->config, text);
    return AFC_OK;
  });
}

afc_status afc_config_set(afc_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_set: null argument");
  return guarded([&] {
    afc::experiment::apply_setting(config->config, key, value);
    return AFC_OK;
  });
}

afc_status afc_config_validate(const afc_config* config) {
  if (!config) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_validate: null config");
  return guarded([&] {
    afc::harness::Simulator(config->config, afc::experiment::preset_sweep(config->preset));
    return AFC_OK;
  });
}

afc_status afc_config_serialize(const afc_config* config, char* buffer, size_t capacity, size_t* needed) {
  if (!config) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_config_serialize: null config");
  return guarded([&] { return copy_out(afc::experiment::serialize(config->config), buffer, capacity, needed); });
}

int afc_config_equal(const afc_config* a, const afc_config* b) {
  if (!a || !b) return 0;
  return a->preset == b->preset && a->config == b->config ? 1 : 0;
}

const char* afc_config_preset(const afc_config* config) {
  if (!config) return nullptr;
  return afc::experiment::to_string(config->preset).data();
}

afc_status afc_experiment_run(const afc_config* config, unsigned workers, afc_progress_fn progress, void* user_data,
                              afc_result_set** out) {
  if (!config || !out) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_experiment_run: null argument");
  *out = nullptr;
  return guarded([&] {
    afc::harness::RunOptions options;
    options.workers = workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : workers;
    if (progress) options.progress = [=](std::size_t done, std::size_t total) { progress(user_data, done, total); };
    auto results = std::make_unique<afc_result_set>();
    results->rows = afc::experiment::run_experiment(config->preset, config->config, options);
    *out = results.release();
    return AFC_OK;
  });
}

void afc_result_set_destroy(afc_result_set* results) { delete results; }

size_t afc_result_set_size(const afc_result_set* results) { return results ? results->rows.size() : 0; }

afc_status afc_result_set_row(const afc_result_set* results, size_t index, afc_result_row* out) {
  if (!results || !out) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_result_set_row: null argument");
  if (index >= results->rows.size()) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_result_set_row: index out of range");
  const auto& r = results->rows[index];
  out->sweep_value = r.sweep_value;
  out->k_factor = r.k_factor;
  out->node_count = static_cast<uint32_t>(r.node_count);
  out->tolerance = r.tolerance;
  out->limited = r.policy_mode == "limited" ? 1 : 0;
  out->trials = r.trials;
  out->successes = r.successes;
  out->success_rate = r.success_rate;
  out->ci95 = r.ci95;
  return AFC_OK;
}

afc_status afc_result_set_write_csv(const afc_result_set* results, const char* path) {
  if (!results) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_result_set_write_csv: null results");
  return guarded([&] {
    const std::string text = csv_text(*results);
    if (!path || std::strcmp(path, "-") == 0) {
      std::cout << text << std::flush;
      if (!std::cout) throw afc::IoError("failed writing CSV to standard output");
      return AFC_OK;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw afc::IoError(std::string("cannot open '") + path + "' for writing");
    file << text;
    file.close();
    if (!file) throw afc::IoError(std::string("failed writing '") + path + "'");
    return AFC_OK;
  });
}

afc_status afc_result_set_csv(const afc_result_set* results, char* buffer, size_t capacity, size_t* needed) {
  if (!results) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_result_set_csv: null results");
  return guarded([&] { return copy_out(csv_text(*results), buffer, capacity, needed); });
}

afc_status afc_result_set_summary(const afc_result_set* results, char* buffer, size_t capacity, size_t* needed) {
  if (!results) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_result_set_summary: null results");
  return guarded([&] {
    std::string text;
    for (const auto& line : afc::experiment::summarize(results->rows)) text += line + "\n";
    return copy_out(text, buffer, capacity, needed);
  });
}

afc_status afc_plateau_oracle(int64_t pool_min, int64_t pool_max, uint32_t node_count, uint64_t tolerance,
                              double* out) {
  if (!out) return fail(AFC_ERR_INVALID_ARGUMENT, "afc_plateau_oracle: null output");
  return guarded([&] {
    *out = afc::harness::plateau_oracle(afc::gaussint::generate_pool(pool_min, pool_max), node_count, tolerance);
    return AFC_OK;
  });
}

}  // extern "C"
