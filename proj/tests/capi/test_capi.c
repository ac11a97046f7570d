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

/* Exercises the C interface from C: handles, status codes, buffers and callbacks. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "stablelike/stablelike.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

#define EXPECT_OK(call)                                                                    \
  do {                                                                                     \
    sl_status s_ = (call);                                                                 \
    if (s_ != SL_OK) {                                                                     \
      fprintf(stderr, "%s:%d: %s -> %s: %s\n", __FILE__, __LINE__, #call, sl_status_name(s_), \
              sl_last_error());                                                            \
      ++failures;                                                                          \
    }                                                                                      \
  } while (0)

static const char* kConstantModel =
    "{\"dim\": 1, \"alpha\": {\"family\": \"constant\", \"params\": {\"value\": 1.5}},"
    " \"xi\": {\"family\": \"stable_calibrated\"}, \"n\": {\"family\": \"match_xi\"}}";

struct counter {
  long rows;
  long starts;
  double last_t;
};

static void count_rows(void* user, int64_t path, double t, const double* x, int dim, const char* event) {
  struct counter* c = (struct counter*)user;
  (void)path;
  (void)x;
  (void)dim;
  c->rows++;
  if (strcmp(event, "start") == 0) c->starts++;
  c->last_t = t;
}

int main(void) {
  const double pi = 3.141592653589793;
  EXPECT(strlen(sl_version()) > 0);
  EXPECT(strcmp(sl_status_name(SL_ERR_DOMAIN), "domain") == 0 || strlen(sl_status_name(SL_ERR_DOMAIN)) > 0);

  /* Coefficients of the Cauchy tail: 1/pi, 0, -1/pi. */
  double a[3];
  EXPECT_OK(sl_series_coefficients(1, 1.0, 3, a));
  EXPECT(fabs(a[0] - 1.0 / pi) < 1e-14);
  EXPECT(fabs(a[1]) < 1e-14);
  EXPECT(fabs(a[2] + 1.0 / pi) < 1e-14);

  /* Density handle. */
  sl_density* dens = NULL;
  EXPECT_OK(sl_density_create(1, 1.0, 0.0, &dens));
  double x = 2.0, p = 0.0, g = 0.0, crossover = 0.0;
  EXPECT_OK(sl_density_eval(dens, 1.0, &x, &p));
  EXPECT(fabs(p - 1.0 / (5.0 * pi)) < 1e-12);
  EXPECT_OK(sl_density_gradient(dens, 1.0, &x, &g));
  EXPECT(fabs(g + 4.0 / (25.0 * pi)) < 1e-11);
  EXPECT_OK(sl_density_crossover(dens, &crossover));
  EXPECT(crossover > 0.0);
  EXPECT(sl_density_eval(dens, -1.0, &x, &p) == SL_ERR_DOMAIN);
  EXPECT(strlen(sl_last_error()) > 0);
  EXPECT(sl_density_eval(NULL, 1.0, &x, &p) == SL_ERR_NULL);
  sl_density_free(dens);
  sl_density_free(NULL);

  sl_density* bad = NULL;
  EXPECT(sl_density_create(1, 2.5, 0.0, &bad) == SL_ERR_DOMAIN);
  EXPECT(bad == NULL);

  /* Resolvent. */
  sl_resolvent* res = NULL;
  double mass = 0.0, origin = 0.0;
  EXPECT_OK(sl_resolvent_create(1, 1.5, &res));
  EXPECT_OK(sl_resolvent_total_mass(res, 2.0, &mass));
  EXPECT(fabs(mass - 0.5) < 1e-8);
  EXPECT_OK(sl_resolvent_at_origin(res, 1.0, &origin));
  EXPECT(origin > 0.0);
  sl_mollified* mol = NULL;
  double jet[3];
  EXPECT_OK(sl_mollified_create(res, 2.0, 0.2, 1.0, 1, &mol));
  EXPECT_OK(sl_mollified_radial(mol, 0.3, jet));
  EXPECT(jet[0] > 0.0 && jet[1] < 0.0);
  sl_mollified_free(mol);
  sl_resolvent_free(res);

  /* Model, JSON buffers and the size protocol. */
  sl_model* model = NULL;
  EXPECT_OK(sl_model_parse(kConstantModel, &model));
  EXPECT(sl_model_dim(model) == 1);
  size_t needed = 0;
  char tiny[4];
  EXPECT(sl_model_to_json(model, tiny, sizeof tiny, &needed) == SL_ERR_BUFFER);
  EXPECT(needed > sizeof tiny);
  char* buf = (char*)malloc(needed);
  EXPECT_OK(sl_model_to_json(model, buf, needed, &needed));
  EXPECT(strstr(buf, "stable_calibrated") != NULL);
  free(buf);

  sl_model* broken = NULL;
  EXPECT(sl_model_parse("{\"dim\": 1}", &broken) == SL_ERR_INVALID_ARGUMENT);
  EXPECT(sl_model_load("/nonexistent/model.json", &broken) == SL_ERR_IO);

  /* Generator on the calibrated model: cos(u x) maps to -|u|^1.5 cos(u x). */
  sl_function* f = NULL;
  EXPECT_OK(sl_function_parse("cosine:u=0.8", 1, &f));
  double at = 0.25, value = 0.0, fv = 0.0;
  char report[8192];
  EXPECT_OK(sl_function_value(f, &at, &fv));
  EXPECT(fabs(fv - cos(0.2)) < 1e-15);
  EXPECT_OK(sl_generator_apply(model, "full", &at, &at, f, &at, 1e-10, &value, report, sizeof report, &needed));
  EXPECT(fabs(value + pow(0.8, 1.5) * cos(0.2)) < 1e-8);
  EXPECT(sl_generator_apply(model, "sideways", &at, &at, f, &at, 1e-10, &value, report, sizeof report, &needed) ==
         SL_ERR_INVALID_ARGUMENT);
  EXPECT(sl_function_parse("wavelet:scale=1", 1, &f) != SL_OK);
  sl_function_free(f);

  /* Simulation through the callback, and determinism of terminal states. */
  const char* plan = "{\"x0\": [0.0], \"horizon\": 0.5, \"rho\": 0.1, \"paths\": 20, \"seed\": 9}";
  struct counter c = {0, 0, 0.0};
  EXPECT_OK(sl_simulate(model, plan, count_rows, &c, report, sizeof report, &needed));
  EXPECT(c.starts == 20);
  EXPECT(c.rows > 40);
  double t1[20], t2[20];
  sl_set_threads(1);
  EXPECT_OK(sl_terminal_states(model, plan, t1));
  sl_set_threads(2);
  EXPECT_OK(sl_terminal_states(model, plan, t2));
  EXPECT(memcmp(t1, t2, sizeof t1) == 0);
  EXPECT(sl_get_threads() == 2);
  sl_set_threads(0);
  EXPECT(sl_simulate(model, "{\"x0\": [0.0], \"rho\": 3.0}", count_rows, &c, report, sizeof report, &needed) ==
         SL_ERR_INVALID_ARGUMENT);

  sl_model_free(model);
  if (failures) fprintf(stderr, "%d C API check(s) failed\n", failures);
  return failures ? 1 : 0;
}
