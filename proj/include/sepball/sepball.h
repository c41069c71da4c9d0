// Copyright 2026 The sepball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the sepball separability toolkit.
 *
 * Every object is an opaque handle created by a *_load / *_create style call
 * and released with the matching *_free. Functions return SB_OK or an error
 * status; the message for the most recent failure on the calling thread is
 * available from sb_last_error(). Output handles are left untouched on
 * failure. Subsystem indices are 0-based.
 */
#ifndef SEPBALL_SEPBALL_H
#define SEPBALL_SEPBALL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SEPBALL_BUILDING_LIBRARY)
#    define SB_API __declspec(dllexport)
#  else
#    define SB_API __declspec(dllimport)
#  endif
#else
#  define SB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1,
  SB_ERR_PARSE = 2,
  SB_ERR_IO = 3,
  SB_ERR_NOT_HERMITIAN = 4,
  SB_ERR_TRACE_NOT_ONE = 5,
  SB_ERR_NOT_PSD = 6,
  SB_ERR_DIMENSION_MISMATCH = 7,
  SB_ERR_INVALID_SUBSET = 8,
  SB_ERR_RANK_DEFICIENT = 9,
  SB_ERR_INVALID_P = 10,
  SB_ERR_FLOOR_UNREACHABLE = 11,
  SB_ERR_SINGULAR_FACTOR = 12,
  SB_ERR_NO_FULL_RANK_COMPONENT = 13,
  SB_ERR_NOT_BIPARTITE = 14,
  SB_ERR_INTERNAL = 15
} sb_status;

typedef struct sb_state sb_state;                 /* validated density matrix */
typedef struct sb_product sb_product;             /* product state */
typedef struct sb_decomposition sb_decomposition; /* separable decomposition */
typedef struct sb_hamiltonian sb_hamiltonian;     /* sum of product terms */
typedef struct sb_report sb_report;               /* JSON report (+ optional CSV) */

SB_API const char* sb_version(void);
SB_API const char* sb_status_name(sb_status status);
/* Message of the last failed call on this thread; "" if none. */
SB_API const char* sb_last_error(void);

/* ---- states ---- */

/* entries: d*d complex numbers, row-major, interleaved (re, im). */
SB_API sb_status sb_state_create(const size_t* dims, size_t parties, const double* entries,
                                 sb_state** out);
SB_API sb_status sb_state_load(const char* path, sb_state** out);
SB_API sb_status sb_state_from_json(const char* json, sb_state** out);
SB_API sb_status sb_state_werner(double p, sb_state** out);
SB_API void sb_state_free(sb_state* state);
SB_API size_t sb_state_dim(const sb_state* state);
SB_API sb_status sb_state_negativity(const sb_state* state, const size_t* subset, size_t subset_len,
                                     double* negativity, double* min_pt_eigenvalue);

/* ---- product states ---- */

SB_API sb_status sb_product_load(const char* path, sb_product** out);
SB_API sb_status sb_product_maximally_mixed(const size_t* dims, size_t parties, sb_product** out);
SB_API sb_status sb_product_reduced(const sb_state* state, sb_product** out);
SB_API sb_status sb_product_closest(const sb_state* state, size_t max_iter, double tol,
                                    sb_product** out, double* distance);
SB_API void sb_product_free(sb_product* product);
SB_API double sb_product_min_eigenvalue(const sb_product* product);
/* p in [1, inf]; pass INFINITY for the operator norm. */
SB_API sb_status sb_product_ball_radius(const sb_product* product, double p, double* radius);

/* ---- decompositions ---- */

SB_API sb_status sb_decomposition_load(const char* path, sb_decomposition** out);
SB_API void sb_decomposition_free(sb_decomposition* decomposition);

/* ---- Hamiltonians ---- */

SB_API sb_status sb_hamiltonian_load(const char* path, sb_hamiltonian** out);
SB_API sb_status sb_hamiltonian_random(const size_t* dims, size_t parties, size_t terms,
                                       uint64_t seed, int traceless, sb_hamiltonian** out);
SB_API sb_status sb_hamiltonian_save(const sb_hamiltonian* hamiltonian, const char* path);
SB_API void sb_hamiltonian_free(sb_hamiltonian* hamiltonian);

/* ---- commands ---- */

typedef enum sb_auto_product {
  SB_AUTO_NONE = 0,
  SB_AUTO_REDUCED = 1,
  SB_AUTO_CLOSEST = 2,
  SB_AUTO_BOTH = 3
} sb_auto_product;

enum {
  SB_CRITERION_BALL = 1u << 0,
  SB_CRITERION_TRACE = 1u << 1,
  SB_CRITERION_PINSKER = 1u << 2,
  SB_CRITERION_DECOMPOSITION = 1u << 3,
  SB_CRITERION_IDENTITY = 1u << 4,
  SB_CRITERIA_DEFAULT = SB_CRITERION_BALL | SB_CRITERION_TRACE | SB_CRITERION_PINSKER |
                        SB_CRITERION_DECOMPOSITION
};

typedef struct sb_certify_options {
  unsigned criteria;            /* SB_CRITERION_* mask */
  double p;                     /* Schatten index for the ball criterion */
  sb_auto_product auto_product;
  size_t max_iter;              /* closest-product search */
  double tol;
} sb_certify_options;

SB_API void sb_certify_options_init(sb_certify_options* options);

/* product and decomposition may be NULL. */
SB_API sb_status sb_certify(const sb_state* state, const sb_product* product,
                            const sb_decomposition* decomposition,
                            const sb_certify_options* options, sb_report** out);
SB_API sb_status sb_radius(const sb_product* product, double p, sb_report** out);
SB_API sb_status sb_dynamics(const sb_product* initial, const sb_hamiltonian* hamiltonian,
                             double t_max, size_t steps, const size_t* bipartition,
                             size_t bipartition_len, sb_report** out);

typedef enum sb_sweep_mode { SB_SWEEP_CRITERIA = 0, SB_SWEEP_DYNAMICS = 1 } sb_sweep_mode;

typedef struct sb_sweep_options {
  sb_sweep_mode mode;
  size_t trials;
  uint64_t seed;
  size_t threads;
  double t_max;  /* dynamics mode */
  size_t steps;  /* dynamics mode */
} sb_sweep_options;

SB_API void sb_sweep_options_init(sb_sweep_options* options);
SB_API sb_status sb_sweep(const size_t* dims, size_t parties, const sb_sweep_options* options,
                          sb_report** out);

/* ---- reports ---- */

/* Owned by the report; valid until sb_report_free. */
SB_API const char* sb_report_json(const sb_report* report);
SB_API const char* sb_report_csv(const sb_report* report);
/* 0 = certified / success, 1 = inconclusive or violations found. */
SB_API int sb_report_exit_code(const sb_report* report);
SB_API void sb_report_free(sb_report* report);

/* Parses a report written by this library and checks its structure. */
SB_API sb_status sb_report_validate(const char* json);

#ifdef __cplusplus
}
#endif

#endif /* SEPBALL_SEPBALL_H */
