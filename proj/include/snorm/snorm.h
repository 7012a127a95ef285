// Copyright 2026 The snorm Authors
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
#ifndef SNORM_SNORM_H_
#define SNORM_SNORM_H_

/* C interface to the snorm engine. All handles are opaque; every call that can
 * fail returns a snorm_status and leaves a message in snorm_last_error() (per
 * thread). Strings returned through char** are owned by the caller and must be
 * released with snorm_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SNORM_API __declspec(dllexport)
#elif defined(SNORM_BUILDING_LIBRARY)
#define SNORM_API __attribute__((visibility("default")))
#else
#define SNORM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snorm_status {
  SNORM_OK = 0,
  SNORM_PROPERTY_VIOLATION = 1,
  SNORM_INPUT_ERROR = 2,
  SNORM_GUARD_EXCEEDED = 3,
  SNORM_INTERNAL_ERROR = 4
} snorm_status;

typedef struct snorm_context snorm_context;
typedef struct snorm_system snorm_system;
typedef struct snorm_vector snorm_vector;

SNORM_API const char* snorm_version(void);
SNORM_API const char* snorm_last_error(void);
SNORM_API void snorm_string_free(char* s);

/* Context: tolerance, support guard, default system, parallelism, cache. */
SNORM_API snorm_status snorm_context_create(snorm_context** out);
SNORM_API void snorm_context_destroy(snorm_context* ctx);
/* Replaces the whole configuration from a JSON file. */
SNORM_API snorm_status snorm_context_load_config(snorm_context* ctx, const char* path);
/* Replaces the whole configuration from JSON text. */
SNORM_API snorm_status snorm_context_set_config_json(snorm_context* ctx, const char* json);
SNORM_API snorm_status snorm_context_config_json(const snorm_context* ctx, char** out);
SNORM_API snorm_status snorm_context_set_tolerance(snorm_context* ctx, double tolerance);
SNORM_API snorm_status snorm_context_set_guard(snorm_context* ctx, size_t guard);
SNORM_API snorm_status snorm_context_set_parallelism(snorm_context* ctx, unsigned threads);
/* "f", "g", or a JSON object describing a custom system. */
SNORM_API snorm_status snorm_context_set_system(snorm_context* ctx, const char* descriptor);
/* Attaches a persistent memo file; a corrupt or stale file is discarded and
 * reported through *warning (may be NULL). */
SNORM_API snorm_status snorm_context_set_cache(snorm_context* ctx, const char* path, char** warning);
SNORM_API snorm_status snorm_context_save_cache(const snorm_context* ctx);

/* Weight systems. */
SNORM_API snorm_status snorm_system_create(const char* descriptor, snorm_system** out);
SNORM_API void snorm_system_destroy(snorm_system* sys);

/* Vectors. Indices are 1-based and strictly increasing. */
SNORM_API snorm_status snorm_vector_from_json(const char* json, snorm_vector** out);
SNORM_API snorm_status snorm_vector_from_coords(const int64_t* indices, const double* values, size_t count,
                                                snorm_vector** out);
SNORM_API void snorm_vector_destroy(snorm_vector* x);
SNORM_API size_t snorm_vector_support_size(const snorm_vector* x);

/* Norm evaluation. sys may be NULL to use the context system. */
SNORM_API snorm_status snorm_norm(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x,
                                  double* out);
SNORM_API snorm_status snorm_best_sum(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x,
                                      int64_t k, double* out);
SNORM_API snorm_status snorm_norm_l(const snorm_context* ctx, const snorm_vector* x, int64_t ell, double* out);
SNORM_API snorm_status snorm_triple_norm(const snorm_context* ctx, const snorm_vector* x, double r, double* out);
/* *ell is -1 for an infinite character. */
SNORM_API snorm_status snorm_character(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x,
                                       int64_t* ell, int* tie);
SNORM_API snorm_status snorm_brute_norm(const snorm_system* sys, const snorm_vector* x, double* out);
SNORM_API snorm_status snorm_constant_norm(const snorm_system* sys, int64_t length, double coefficient, double* out);
/* Full result as JSON: value, character, witness, functional. */
SNORM_API snorm_status snorm_norm_json(const snorm_context* ctx, const snorm_system* sys, const snorm_vector* x,
                                       char** out);

/* Command layer. verb is "norm", "seq" or "audit"; sub names the subcommand
 * ("" for norm); args is a JSON object. On success *json (and *csv when the
 * command produces a table, else an empty string) are set and *outcome is 0
 * when every checked property came out as expected, 1 otherwise. */
SNORM_API snorm_status snorm_run(const snorm_context* ctx, const char* verb, const char* sub, const char* args,
                                 char** json, char** csv, int* outcome);

/* Run records: the command, its config, and its outputs. */
SNORM_API snorm_status snorm_record_run(const snorm_context* ctx, const char* verb, const char* sub,
                                        const char* args, char** json, char** csv, int* outcome, char** record);
/* Re-runs a record under its stored config; *identical is 1 when the outputs
 * match bitwise. *report describes any difference. */
SNORM_API snorm_status snorm_replay(const char* record, int* identical, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SNORM_SNORM_H_ */
