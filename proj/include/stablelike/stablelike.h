/*
 * Copyright (c) 2026 The stablelike Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STABLELIKE_STABLELIKE_H
#define STABLELIKE_STABLELIKE_H

#include <stddef.h>
#include <stdint.h>

#if defined(STABLELIKE_BUILDING_LIBRARY)
#define SL_API __attribute__((visibility("default")))
#else
#define SL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_INVALID_ARGUMENT = 1,
  SL_ERR_DOMAIN = 2,
  SL_ERR_POLE = 3,
  SL_ERR_CONVERGENCE = 4,
  SL_ERR_MODEL = 5,
  SL_ERR_IO = 6,
  SL_ERR_INTERNAL = 7,
  SL_ERR_NULL = 8,
  SL_ERR_BUFFER = 9 /* output buffer too small; *needed holds the required size */
} sl_status;

typedef struct sl_model sl_model;
typedef struct sl_density sl_density;
typedef struct sl_resolvent sl_resolvent;
typedef struct sl_mollified sl_mollified;
typedef struct sl_function sl_function;

/* Library version string, e.g. "0.3.0". */
SL_API const char* sl_version(void);
/* Message of the last failed call on this thread; empty after a successful call. */
SL_API const char* sl_last_error(void);
SL_API const char* sl_status_name(sl_status status);

/* Worker cap for internal parallel loops; 0 restores hardware concurrency. Results do not depend on it. */
SL_API void sl_set_threads(int threads);
SL_API int sl_get_threads(void);

/* ---- special functions ---- */

/* out[k-1] = a_k for k = 1..k_max. */
SL_API sl_status sl_series_coefficients(int dim, double alpha, int k_max, double* out);
SL_API sl_status sl_fractional_laplacian_constant(int dim, double alpha, double* out);

/* ---- stable densities ---- */

/* tolerance <= 0 selects the default (1e-10). */
SL_API sl_status sl_density_create(int dim, double alpha, double tolerance, sl_density** out);
SL_API void sl_density_free(sl_density* density);
SL_API sl_status sl_density_eval(const sl_density* density, double t, const double* x, double* out);
SL_API sl_status sl_density_gradient(const sl_density* density, double t, const double* x, double* out);
/* Row-major dim x dim. */
SL_API sl_status sl_density_hessian(const sl_density* density, double t, const double* x, double* out);
SL_API sl_status sl_density_crossover(const sl_density* density, double* out);
/* *series = 1 when p(t, r) is evaluated from the tail series. */
SL_API sl_status sl_density_method(const sl_density* density, double t, double r, int* series);

/* ---- models ---- */

SL_API sl_status sl_model_load(const char* path, sl_model** out);
SL_API sl_status sl_model_parse(const char* json, sl_model** out);
SL_API void sl_model_free(sl_model* model);
SL_API int sl_model_dim(const sl_model* model);
SL_API sl_status sl_model_to_json(const sl_model* model, char* buffer, size_t capacity, size_t* needed);
/* Assumption report as JSON. plan_json may be NULL for the default sampling plan. */
SL_API sl_status sl_model_validate(const sl_model* model, const char* plan_json, int* passed, char* buffer,
                                   size_t capacity, size_t* needed);

/* ---- resolvent kernels ---- */

SL_API sl_status sl_resolvent_create(int dim, double alpha, sl_resolvent** out);
SL_API void sl_resolvent_free(sl_resolvent* resolvent);
SL_API sl_status sl_resolvent_value(const sl_resolvent* resolvent, double lambda, double r, double* out);
SL_API sl_status sl_resolvent_at_origin(const sl_resolvent* resolvent, double lambda, double* out);
SL_API sl_status sl_resolvent_total_mass(const sl_resolvent* resolvent, double lambda, double* out);

/* Mollified kernel with time change xi; tabulate != 0 builds the fast table (dim 1 only). */
SL_API sl_status sl_mollified_create(const sl_resolvent* resolvent, double lambda, double eps, double xi, int tabulate,
                                     sl_mollified** out);
SL_API void sl_mollified_free(sl_mollified* mollified);
/* jet[0..2] = value, first and second radial derivative at |x| = s. */
SL_API sl_status sl_mollified_radial(const sl_mollified* mollified, double s, double* jet);
/* The three resolvent bound witnesses over r in [r_min, r_max], as a JSON array. */
SL_API sl_status sl_mollified_witnesses(const sl_mollified* mollified, double r_min, double r_max, int points,
                                        int* passed, char* buffer, size_t capacity, size_t* needed);

/* ---- test functions and the generator ---- */

/* "family:key=v1,v2;key=v", e.g. "cosine:u=0.5" or "gaussian:center=0;width=1". */
SL_API sl_status sl_function_parse(const char* spec, int dim, sl_function** out);
SL_API void sl_function_free(sl_function* function);
SL_API sl_status sl_function_value(const sl_function* function, const double* x, double* out);

/* variant: "full", "frozen" or "mixed"; z (frozen, mixed) and y (mixed) may be NULL otherwise.
   tolerance <= 0 selects the default. JSON gets value and zone contributions; buffer may be NULL. */
SL_API sl_status sl_generator_apply(const sl_model* model, const char* variant, const double* z, const double* y,
                                    const sl_function* function, const double* x, double tolerance, double* value,
                                    char* buffer, size_t capacity, size_t* needed);

/* ---- perturbation estimates ---- */

SL_API sl_status sl_perturbation_scan(const sl_model* model, const sl_function* g, const double* x, double eps,
                                      double lambda_min, double lambda_max, int points, double tolerance,
                                      int* success, char* buffer, size_t capacity, size_t* needed);
/* Bound witnesses of the three operator differences at (x, y), as a JSON array. */
SL_API sl_status sl_perturbation_witnesses(const sl_model* model, double lambda, double eps, const double* x,
                                           const double* y, int* passed, char* buffer, size_t capacity,
                                           size_t* needed);

/* ---- Monte Carlo ----
   plan_json keys: x0 (array), horizon, rho, paths, seed, max_step (0 = default), box_lo, box_hi. */

typedef void (*sl_path_callback)(void* user, int64_t path, double t, const double* x, int dim, const char* event);

/* Streams every event of every path, in path order. */
SL_API sl_status sl_simulate(const sl_model* model, const char* plan_json, sl_path_callback callback, void* user,
                             char* buffer, size_t capacity, size_t* needed);
/* out holds paths x dim terminal (or stopped) states. */
SL_API sl_status sl_terminal_states(const sl_model* model, const char* plan_json, double* out);
/* functions_json: array of function specs. */
SL_API sl_status sl_martingale_test(const sl_model* model, const char* plan_json, const char* functions_json,
                                    const double* times, int n_times, double tolerance, int* passed, char* buffer,
                                    size_t capacity, size_t* needed);
SL_API sl_status sl_resolvent_identity(const sl_model* model, const char* plan_json, double lambda,
                                       const sl_function* function, double tolerance, int* passed, char* buffer,
                                       size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* STABLELIKE_STABLELIKE_H */
