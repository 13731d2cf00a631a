/* Copyright 2026 The afc-keyforge Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface to the afc-keyforge simulator.
 *
 * Objects are opaque handles created and released by the library. Every fallible
 * call returns an afc_status; on failure afc_last_error() returns a message for
 * the calling thread that stays valid until that thread's next library call. */

#ifndef AFC_KEYFORGE_H
#define AFC_KEYFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(AFC_BUILDING_LIBRARY)
#define AFC_API __attribute__((visibility("default")))
#else
#define AFC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum afc_status {
  AFC_OK = 0,
  AFC_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer, index out of range */
  AFC_ERR_CONFIG = 2,           /* unknown key, malformed value, inconsistent configuration */
  AFC_ERR_IO = 3,               /* file could not be read or written */
  AFC_ERR_BUFFER_TOO_SMALL = 4, /* *needed holds the required size including the NUL */
  AFC_ERR_INTERNAL = 5
} afc_status;

typedef struct afc_config afc_config;
typedef struct afc_result_set afc_result_set;

typedef struct afc_result_row {
  double sweep_value;
  double k_factor;
  uint32_t node_count;
  uint64_t tolerance;
  int limited; /* 1 when produced under the limited factorization policy */
  uint64_t trials;
  uint64_t successes;
  double success_rate;
  double ci95;
} afc_result_row;

/* Invoked after each finished sweep point with (finished, total) of the current block. */
typedef void (*afc_progress_fn)(void* user_data, size_t finished, size_t total);

AFC_API const char* afc_version(void);
AFC_API const char* afc_status_string(afc_status status);
AFC_API const char* afc_last_error(void);

/* Reference defaults with the named preset's overrides applied. Presets:
 * sweep-error, sweep-distance, sweep-tolerance, compare-limited, compare-nodes, single-run. */
AFC_API afc_status afc_config_create(const char* preset, afc_config** out);
AFC_API void afc_config_destroy(afc_config* config);
AFC_API afc_status afc_config_clone(const afc_config* config, afc_config** out);

/* Line-oriented `key = value` file; later settings override earlier ones. */
AFC_API afc_status afc_config_load_file(afc_config* config, const char* path);
AFC_API afc_status afc_config_load_text(afc_config* config, const char* text);
AFC_API afc_status afc_config_set(afc_config* config, const char* key, const char* value);
AFC_API afc_status afc_config_validate(const afc_config* config);

/* Writes the effective configuration as `key = value` text. With buffer == NULL
 * only *needed is filled. */
AFC_API afc_status afc_config_serialize(const afc_config* config, char* buffer, size_t capacity, size_t* needed);
AFC_API int afc_config_equal(const afc_config* a, const afc_config* b);
AFC_API const char* afc_config_preset(const afc_config* config);

/* workers == 0 selects the hardware concurrency. Results do not depend on workers. */
AFC_API afc_status afc_experiment_run(const afc_config* config, unsigned workers, afc_progress_fn progress,
                                      void* user_data, afc_result_set** out);

AFC_API void afc_result_set_destroy(afc_result_set* results);
AFC_API size_t afc_result_set_size(const afc_result_set* results);
AFC_API afc_status afc_result_set_row(const afc_result_set* results, size_t index, afc_result_row* out);

/* CSV with header row, LF endings, 6 significant digits. path == NULL or "-" writes to stdout. */
AFC_API afc_status afc_result_set_write_csv(const afc_result_set* results, const char* path);
AFC_API afc_status afc_result_set_csv(const afc_result_set* results, char* buffer, size_t capacity, size_t* needed);

/* Min/max success rate per (policy, node count, K), one line each, LF-separated. */
AFC_API afc_status afc_result_set_summary(const afc_result_set* results, char* buffer, size_t capacity,
                                          size_t* needed);

/* Success probability when the recovered key collapses to a node's own prime. */
AFC_API afc_status afc_plateau_oracle(int64_t pool_min, int64_t pool_max, uint32_t node_count, uint64_t tolerance,
                                      double* out);

#ifdef __cplusplus
}
#endif

#endif /* AFC_KEYFORGE_H */
