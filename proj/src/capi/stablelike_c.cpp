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

#include "stablelike/stablelike.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "density/stable_density.hpp"
#include "generator/generator.hpp"
#include "generator/test_function.hpp"
#include "model/assumptions.hpp"
#include "model/model.hpp"
#include "montecarlo/simulation.hpp"
#include "perturbation/perturbation.hpp"
#include "resolvent/resolvent.hpp"
#include "special/special_functions.hpp"

namespace sl = stablelike;

struct sl_model {
  sl::ModelPtr model;
};
struct sl_density {
  std::unique_ptr<sl::DensityEvaluator> eval;
};
struct sl_resolvent {
  std::shared_ptr<const sl::ResolventKernel> kernel;
};
struct sl_mollified {
  std::shared_ptr<const sl::MollifiedResolvent> exact;
  std::shared_ptr<const sl::MollifiedTable> table;
};
struct sl_function {
  std::shared_ptr<const sl::TestFunction> f;
};

namespace {

thread_local std::string g_last_error;

sl_status status_of(sl::ErrorCode code) {
  switch (code) {
    case sl::ErrorCode::kInvalidArgument: return SL_ERR_INVALID_ARGUMENT;
    case sl::ErrorCode::kDomain: return SL_ERR_DOMAIN;
    case sl::ErrorCode::kPole: return SL_ERR_POLE;
    case sl::ErrorCode::kConvergence: return SL_ERR_CONVERGENCE;
    case sl::ErrorCode::kModel: return SL_ERR_MODEL;
    case sl::ErrorCode::kIo: return SL_ERR_IO;
    case sl::ErrorCode::kInternal: return SL_ERR_INTERNAL;
  }
  return SL_ERR_INTERNAL;
}

template <typename Body>
sl_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const sl::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const sl::Json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return SL_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SL_ERR_INTERNAL;
  }
}

sl_status fail(sl_status s, const char* what) {
  g_last_error = what;
  return s;
}

#define SL_REQUIRE(ptr)                                           \
  do {                                                            \
    if ((ptr) == nullptr) return fail(SL_ERR_NULL, #ptr " is NULL"); \
  } while (0)

/// Copies text (with terminator) when it fits; always reports the size needed.
sl_status emit(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buffer == nullptr && capacity == 0) return SL_OK;
  if (buffer == nullptr || capacity < text.size() + 1) return fail(SL_ERR_BUFFER, "output buffer too small");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return SL_OK;
}

sl::Vec point(const double* x, int dim) {
  sl::Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = x[i];
  return v;
}

sl::Json parse_json(const char* text) {
  try {
    return sl::Json::parse(text);
  } catch (const sl::Json::exception& e) {
    throw sl::InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* sl_version(void) { return STABLELIKE_VERSION; }

const char* sl_last_error(void) { return g_last_error.c_str(); }

const char* sl_status_name(sl_status status) {
  switch (status) {
    case SL_OK: return "ok";
    case SL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SL_ERR_DOMAIN: return "domain error";
    case SL_ERR_POLE: return "pole";
    case SL_ERR_CONVERGENCE: return "no convergence";
    case SL_ERR_MODEL: return "model error";
    case SL_ERR_IO: return "i/o error";
    case SL_ERR_INTERNAL: return "internal error";
    case SL_ERR_NULL: return "null argument";
    case SL_ERR_BUFFER: return "buffer too small";
  }
  return "unknown status";
}

void sl_set_threads(int threads) { sl::set_thread_limit(threads); }

int sl_get_threads(void) { return sl::thread_limit(); }

sl_status sl_series_coefficients(int dim, double alpha, int k_max, double* out) {
  SL_REQUIRE(out);
  return guarded([&] {
    const auto table = sl::series_coefficients(dim, alpha, k_max);
    for (int k = 1; k <= k_max; ++k) out[k - 1] = table[k];
    return SL_OK;
  });
}

sl_status sl_fractional_laplacian_constant(int dim, double alpha, double* out) {
  SL_REQUIRE(out);
  return guarded([&] {
    *out = sl::fractional_laplacian_constant(dim, alpha);
    return SL_OK;
  });
}

sl_status sl_density_create(int dim, double alpha, double tolerance, sl_density** out) {
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    sl::DensityConfig cfg;
    if (tolerance > 0.0) cfg.tolerance = tolerance;
    auto h = std::make_unique<sl_density>();
    h->eval = std::make_unique<sl::DensityEvaluator>(dim, alpha, cfg);
    *out = h.release();
    return SL_OK;
  });
}

void sl_density_free(sl_density* density) { delete density; }

sl_status sl_density_eval(const sl_density* density, double t, const double* x, double* out) {
  SL_REQUIRE(density);
  SL_REQUIRE(x);
  SL_REQUIRE(out);
  return guarded([&] {
    *out = density->eval->density(t, point(x, density->eval->dim()));
    return SL_OK;
  });
}

sl_status sl_density_gradient(const sl_density* density, double t, const double* x, double* out) {
  SL_REQUIRE(density);
  SL_REQUIRE(x);
  SL_REQUIRE(out);
  return guarded([&] {
    const int d = density->eval->dim();
    const sl::Vec g = density->eval->gradient(t, point(x, d));
    for (int i = 0; i < d; ++i) out[i] = g[i];
    return SL_OK;
  });
}

sl_status sl_density_hessian(const sl_density* density, double t, const double* x, double* out) {
  SL_REQUIRE(density);
  SL_REQUIRE(x);
  SL_REQUIRE(out);
  return guarded([&] {
    const int d = density->eval->dim();
    const sl::Mat h = density->eval->hessian(t, point(x, d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[i * d + j] = h(i, j);
    return SL_OK;
  });
}

sl_status sl_density_crossover(const sl_density* density, double* out) {
  SL_REQUIRE(density);
  SL_REQUIRE(out);
  *out = density->eval->crossover();
  return SL_OK;
}

sl_status sl_density_method(const sl_density* density, double t, double r, int* series) {
  SL_REQUIRE(density);
  SL_REQUIRE(series);
  return guarded([&] {
    if (!(t > 0.0)) throw sl::DomainError("time must be positive");
    *series = density->eval->profile().uses_series(std::abs(r) * std::pow(t, -1.0 / density->eval->alpha())) ? 1 : 0;
    return SL_OK;
  });
}

sl_status sl_model_load(const char* path, sl_model** out) {
  SL_REQUIRE(path);
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<sl_model>();
    h->model = sl::load_model(path);
    *out = h.release();
    return SL_OK;
  });
}

sl_status sl_model_parse(const char* json, sl_model** out) {
  SL_REQUIRE(json);
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<sl_model>();
    h->model = sl::VariableOrderModel::from_json(parse_json(json));
    *out = h.release();
    return SL_OK;
  });
}

void sl_model_free(sl_model* model) { delete model; }

int sl_model_dim(const sl_model* model) { return model ? model->model->dim() : 0; }

sl_status sl_model_to_json(const sl_model* model, char* buffer, size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  return guarded([&] { return emit(model->model->to_json().dump(), buffer, capacity, needed); });
}

sl_status sl_model_validate(const sl_model* model, const char* plan_json, int* passed, char* buffer, size_t capacity,
                            size_t* needed) {
  SL_REQUIRE(model);
  return guarded([&] {
    const int d = model->model->dim();
    const auto plan = plan_json ? sl::sampling_plan_from_json(parse_json(plan_json), d) : sl::default_sampling_plan(d);
    const auto report = sl::validate_assumptions(*model->model, plan);
    if (passed) *passed = report.passed() ? 1 : 0;
    return emit(report.to_json().dump(), buffer, capacity, needed);
  });
}

sl_status sl_resolvent_create(int dim, double alpha, sl_resolvent** out) {
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<sl_resolvent>();
    h->kernel = std::make_shared<const sl::ResolventKernel>(dim, alpha);
    *out = h.release();
    return SL_OK;
  });
}

void sl_resolvent_free(sl_resolvent* resolvent) { delete resolvent; }

sl_status sl_resolvent_value(const sl_resolvent* resolvent, double lambda, double r, double* out) {
  SL_REQUIRE(resolvent);
  SL_REQUIRE(out);
  return guarded([&] {
    *out = resolvent->kernel->value(lambda, r);
    return SL_OK;
  });
}

sl_status sl_resolvent_at_origin(const sl_resolvent* resolvent, double lambda, double* out) {
  SL_REQUIRE(resolvent);
  SL_REQUIRE(out);
  return guarded([&] {
    *out = resolvent->kernel->at_origin(lambda);
    return SL_OK;
  });
}

sl_status sl_resolvent_total_mass(const sl_resolvent* resolvent, double lambda, double* out) {
  SL_REQUIRE(resolvent);
  SL_REQUIRE(out);
  return guarded([&] {
    *out = resolvent->kernel->total_mass(lambda);
    return SL_OK;
  });
}

sl_status sl_mollified_create(const sl_resolvent* resolvent, double lambda, double eps, double xi, int tabulate,
                              sl_mollified** out) {
  SL_REQUIRE(resolvent);
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<sl_mollified>();
    h->exact = std::make_shared<const sl::MollifiedResolvent>(resolvent->kernel, lambda, eps, xi);
    if (tabulate) {
      if (h->exact->dim() != 1) throw sl::InvalidArgument("mollified tables exist for dimension 1 only");
      h->table = std::make_shared<const sl::MollifiedTable>(h->exact);
    }
    *out = h.release();
    return SL_OK;
  });
}

void sl_mollified_free(sl_mollified* mollified) { delete mollified; }

sl_status sl_mollified_radial(const sl_mollified* mollified, double s, double* jet) {
  SL_REQUIRE(mollified);
  SL_REQUIRE(jet);
  return guarded([&] {
    const auto r = mollified->table ? mollified->table->radial(s) : mollified->exact->radial(s, 2);
    jet[0] = r.value;
    jet[1] = r.first;
    jet[2] = r.second;
    return SL_OK;
  });
}

sl_status sl_mollified_witnesses(const sl_mollified* mollified, double r_min, double r_max, int points, int* passed,
                                 char* buffer, size_t capacity, size_t* needed) {
  SL_REQUIRE(mollified);
  return guarded([&] {
    const auto ws = sl::verify_resolvent_bounds(*mollified->exact, r_min, r_max, points);
    sl::Json arr = sl::Json::array();
    bool ok = true;
    for (const auto& w : ws) {
      arr.push_back(w.to_json());
      ok = ok && w.pass;
    }
    if (passed) *passed = ok ? 1 : 0;
    return emit(arr.dump(), buffer, capacity, needed);
  });
}

sl_status sl_function_parse(const char* spec, int dim, sl_function** out) {
  SL_REQUIRE(spec);
  SL_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<sl_function>();
    h->f = std::make_shared<const sl::TestFunction>(sl::TestFunction::parse(spec, dim));
    *out = h.release();
    return SL_OK;
  });
}

void sl_function_free(sl_function* function) { delete function; }

sl_status sl_function_value(const sl_function* function, const double* x, double* out) {
  SL_REQUIRE(function);
  SL_REQUIRE(x);
  SL_REQUIRE(out);
  return guarded([&] {
    *out = function->f->value(point(x, function->f->dim()));
    return SL_OK;
  });
}

sl_status sl_generator_apply(const sl_model* model, const char* variant, const double* z, const double* y,
                             const sl_function* function, const double* x, double tolerance, double* value,
                             char* buffer, size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(function);
  SL_REQUIRE(x);
  return guarded([&] {
    const int d = model->model->dim();
    sl::JumpKernelSpec spec;
    spec.model = model->model;
    spec.variant = sl::parse_variant(variant ? variant : "full");
    if (spec.variant != sl::KernelVariant::kFull) {
      if (!z) throw sl::InvalidArgument("frozen and mixed variants need the freeze point z");
      spec.z = point(z, d);
    }
    if (spec.variant == sl::KernelVariant::kMixed) {
      if (!y) throw sl::InvalidArgument("the mixed variant needs the weight point y");
      spec.y = point(y, d);
    }
    if (tolerance > 0.0) spec.config.tolerance = tolerance;
    const sl::Vec at = point(x, d);
    const auto g = sl::apply(spec, *function->f, at);
    if (value) *value = g.value;
    if (!buffer && capacity == 0 && !needed) return SL_OK;
    sl::Json j{{"variant", sl::variant_name(spec.variant)},
               {"function", function->f->to_json()},
               {"x", std::vector<double>(x, x + d)},
               {"value", g.value},
               {"zones", {{"inner", g.inner}, {"middle", g.middle}, {"outer", g.outer}, {"tail", g.tail}}},
               {"delta", g.delta},
               {"r_max", g.r_max},
               {"tolerance", spec.config.tolerance}};
    return emit(j.dump(), buffer, capacity, needed);
  });
}

sl_status sl_perturbation_scan(const sl_model* model, const sl_function* g, const double* x, double eps,
                               double lambda_min, double lambda_max, int points, double tolerance, int* success,
                               char* buffer, size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(g);
  SL_REQUIRE(x);
  return guarded([&] {
    sl::PerturbationConfig cfg;
    cfg.eps = eps;
    if (tolerance > 0.0) cfg.apply.tolerance = tolerance;
    const auto grid = sl::geometric_grid(lambda_min, lambda_max, points);
    const auto scan = sl::contraction_scan(*model->model, *g->f, point(x, model->model->dim()), grid, cfg);
    if (success) *success = scan.success() ? 1 : 0;
    auto j = scan.to_json();
    j["eps"] = eps;
    j["function"] = g->f->to_json();
    return emit(j.dump(), buffer, capacity, needed);
  });
}

sl_status sl_perturbation_witnesses(const sl_model* model, double lambda, double eps, const double* x, const double* y,
                                    int* passed, char* buffer, size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(x);
  SL_REQUIRE(y);
  return guarded([&] {
    const int d = model->model->dim();
    sl::PerturbationConfig cfg;
    cfg.eps = eps;
    sl::Json arr = sl::Json::array();
    bool ok = true;
    for (auto kind : {sl::DifferenceKind::kLMinusMx, sl::DifferenceKind::kMxMinusMxy, sl::DifferenceKind::kMxyMinusMy}) {
      const auto w = sl::bound_witness(*model->model, kind, lambda, point(x, d), point(y, d), 1e-2, 1e2, 25, cfg);
      arr.push_back(w.to_json());
      ok = ok && w.pass;
    }
    if (passed) *passed = ok ? 1 : 0;
    return emit(arr.dump(), buffer, capacity, needed);
  });
}

sl_status sl_simulate(const sl_model* model, const char* plan_json, sl_path_callback callback, void* user, char* buffer,
                      size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(plan_json);
  return guarded([&] {
    const auto plan = sl::SimulationPlan::from_json(model->model, parse_json(plan_json));
    sl::EnsembleDiagnostics diag;
    const auto paths = sl::simulate_ensemble(plan, &diag);
    if (callback) {
      for (std::size_t i = 0; i < paths.size(); ++i) {
        for (const auto& e : paths[i].events) {
          const std::string name = sl::event_name(e.kind);
          callback(user, static_cast<int64_t>(i), e.t, e.x.data(), static_cast<int>(e.x.size()), name.c_str());
        }
      }
    }
    sl::Json j{{"plan", plan.to_json()}, {"diagnostics", diag.to_json()}};
    if (!buffer && capacity == 0 && !needed) return SL_OK;
    return emit(j.dump(), buffer, capacity, needed);
  });
}

sl_status sl_terminal_states(const sl_model* model, const char* plan_json, double* out) {
  SL_REQUIRE(model);
  SL_REQUIRE(plan_json);
  SL_REQUIRE(out);
  return guarded([&] {
    const auto plan = sl::SimulationPlan::from_json(model->model, parse_json(plan_json));
    const auto xs = sl::terminal_states(plan);
    const int d = model->model->dim();
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (int k = 0; k < d; ++k) out[i * d + k] = xs[i][k];
    return SL_OK;
  });
}

sl_status sl_martingale_test(const sl_model* model, const char* plan_json, const char* functions_json,
                             const double* times, int n_times, double tolerance, int* passed, char* buffer,
                             size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(plan_json);
  SL_REQUIRE(functions_json);
  SL_REQUIRE(times);
  return guarded([&] {
    const auto plan = sl::SimulationPlan::from_json(model->model, parse_json(plan_json));
    std::vector<std::shared_ptr<const sl::TestFunction>> fs;
    for (const auto& spec : parse_json(functions_json)) {
      if (spec.is_string()) {
        fs.push_back(std::make_shared<const sl::TestFunction>(sl::TestFunction::parse(spec.get<std::string>(), model->model->dim())));
      } else {
        fs.push_back(std::make_shared<const sl::TestFunction>(sl::TestFunction::from_json(spec, model->model->dim())));
      }
    }
    sl::EnsembleDiagnostics diag;
    const auto reports = sl::martingale_residuals(plan, fs, std::vector<double>(times, times + n_times),
                                                  tolerance > 0.0 ? tolerance : 1e-8, &diag);
    sl::Json arr = sl::Json::array();
    bool ok = true;
    for (const auto& r : reports) {
      arr.push_back(r.to_json());
      ok = ok && r.pass;
    }
    if (passed) *passed = ok ? 1 : 0;
    sl::Json j{{"plan", plan.to_json()}, {"reports", arr}, {"diagnostics", diag.to_json()}, {"pass", ok}};
    return emit(j.dump(), buffer, capacity, needed);
  });
}

sl_status sl_resolvent_identity(const sl_model* model, const char* plan_json, double lambda,
                                const sl_function* function, double tolerance, int* passed, char* buffer,
                                size_t capacity, size_t* needed) {
  SL_REQUIRE(model);
  SL_REQUIRE(plan_json);
  SL_REQUIRE(function);
  return guarded([&] {
    const auto plan = sl::SimulationPlan::from_json(model->model, parse_json(plan_json));
    const auto rep = sl::resolvent_identity_check(plan, lambda, function->f, tolerance > 0.0 ? tolerance : 1e-3);
    if (passed) *passed = rep.pass ? 1 : 0;
    return emit(rep.to_json().dump(), buffer, capacity, needed);
  });
}

}  // extern "C"
