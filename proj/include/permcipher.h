/*
 * Copyright 2026 The permcipher Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the permutation-cipher anonymization library.
 *
 * All objects are opaque handles released with their pc_*_free function.
 * Every function returns PC_OK on success; on failure pc_last_error()
 * holds a thread-local description of the most recent error.
 */

#ifndef PERMCIPHER_H_
#define PERMCIPHER_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PC_VERSION_STRING "1.0.0"

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_INVALID_ARGUMENT = 1,
  PC_ERR_DIMENSION = 2,
  PC_ERR_PARSE = 3,
  PC_ERR_VALIDATION = 4,
  PC_ERR_DOMAIN = 5,
  PC_ERR_RANGE = 6,
  PC_ERR_DEGENERATE = 7,
  PC_ERR_INFEASIBLE = 8,
  PC_ERR_IO = 9,
  PC_ERR_INTERNAL = 10
} pc_status;

typedef struct pc_dataset pc_dataset;
typedef struct pc_keygroup pc_keygroup;
typedef struct pc_menu pc_menu;

const char* pc_version(void);

/* Thread-local message for the most recent failing call. */
const char* pc_last_error(void);

/* Frees strings returned through char** output parameters. */
void pc_string_free(char* s);

/* ---- datasets ---- */

pc_status pc_dataset_load_csv(const char* path, int has_header, pc_dataset** out);
pc_status pc_dataset_save_csv(const pc_dataset* ds, const char* path);
void pc_dataset_free(pc_dataset* ds);
size_t pc_dataset_rows(const pc_dataset* ds);
size_t pc_dataset_cols(const pc_dataset* ds);

/* Ranks of every attribute (direction: 0 ascending, 1 descending),
 * written as CSV with one rank column per attribute. */
pc_status pc_ranks_to_csv(const pc_dataset* ds, int descending, const char* path);

/* ---- reverse mapping and the cipher ---- */

pc_status pc_reverse_map(const pc_dataset* x, const pc_dataset* y, pc_dataset** out);
pc_status pc_residual_noise(const pc_dataset* x, const pc_dataset* y, pc_dataset** out);
pc_status pc_extract_keys(const pc_dataset* x, const pc_dataset* y, pc_keygroup** out);
pc_status pc_encrypt(const pc_dataset* x, const pc_keygroup* keys, pc_dataset** out);

/* ---- keys ---- */

pc_status pc_keys_identity(size_t n, size_t p, pc_keygroup** out);
pc_status pc_keys_random(size_t n, size_t p, uint64_t seed, pc_keygroup** out);
pc_status pc_keys_load(const char* path, pc_keygroup** out);
pc_status pc_keys_save(const pc_keygroup* keys, const char* path, int as_matrix);
void pc_keys_free(pc_keygroup* keys);
size_t pc_keys_n(const pc_keygroup* keys);
size_t pc_keys_p(const pc_keygroup* keys);

/* ---- power-mean curves ---- */

/* Disclosure-risk curves (one per attribute) over [alpha_min, alpha_max]
 * with the given step; alphas must satisfy alpha_max <= 1. */
pc_status pc_risk_curves_to_csv(const pc_keygroup* keys, double alpha_min, double alpha_max,
                                double alpha_step, double epsilon, int normalize, const char* path);

/* Information-loss curves (one per attribute pair); alpha_min >= 1. */
pc_status pc_loss_curves_to_csv(const pc_keygroup* keys, double alpha_min, double alpha_max,
                                double alpha_step, double epsilon, int normalize, const char* path);

/* Point evaluations: risk rows for every alpha <= 1, loss rows for every
 * alpha >= 1 in `alphas`. */
pc_status pc_point_metrics_to_csv(const pc_keygroup* keys, const double* alphas, size_t n_alphas,
                                  double epsilon, int normalize, const char* path);

/* ---- permutation menus and calibration ---- */

pc_status pc_menu_load(const char* path, pc_menu** out);
void pc_menu_free(pc_menu* menu);

/* Diagnostics as one line per finding ("contradiction: ..." or
 * "warning: ..."); *n_contradictions counts the hard failures. */
pc_status pc_menu_check(const pc_menu* menu, char** diagnostics, size_t* n_contradictions);

/* Synthesizes keys satisfying the menu. Returns PC_ERR_INFEASIBLE when
 * the menu is contradictory or the budget runs out; in the latter case
 * the best-effort keys and report are still returned when the output
 * pointers are non-NULL. */
pc_status pc_calibrate(const pc_menu* menu, uint64_t seed, uint64_t budget, double epsilon,
                       pc_keygroup** out_keys, char** report_json);

/* ---- classical method emulators ---- */

pc_status pc_mask_rank_swap(const pc_dataset* x, double swap_pct, uint64_t seed, pc_dataset** out);
pc_status pc_mask_additive_noise(const pc_dataset* x, double noise_ratio, uint64_t seed,
                                 pc_dataset** out);
pc_status pc_mask_multiplicative_noise(const pc_dataset* x, double lo, double hi, uint64_t seed,
                                       pc_dataset** out);

/* ---- record-linkage attack harness ---- */

/* Shuffles the masked rows with a hidden permutation, runs rank- and
 * distance-based linkage under both greedy and optimal-assignment
 * strategies, and writes CSV rows: method,strategy,seed,correct_rate. */
pc_status pc_attack_report_to_csv(const pc_dataset* x, const pc_dataset* y, uint64_t seed,
                                  const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PERMCIPHER_H_ */
