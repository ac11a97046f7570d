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

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "generator/generator.hpp"
#include "generator/test_function.hpp"
#include "model/model.hpp"
#include "montecarlo/sampler.hpp"

namespace stablelike {

struct SimulationPlan {
  ModelPtr model;
  Vec x0;
  double horizon = 1.0;
  double rho = 1e-3;        // jumps with |h| ≤ ρ are replaced by a Gaussian
  std::int64_t paths = 1000;
  std::uint64_t seed = 1;
  double max_step = 0.0;    // coefficient refresh interval; 0 selects min(0.01, ρ^{α_low}/10)
  Vec box_lo, box_hi;       // empty: no stopping

  void validate() const;
  double refresh_step() const;
  bool stops_at(const Vec& x) const;
  Json to_json() const;
  /// Keys: x0, horizon, rho, paths, seed, max_step, box_lo, box_hi (all optional except x0 for d > 1).
  static SimulationPlan from_json(ModelPtr model, const Json& j);
};

enum class EventKind { kStart, kJump, kRefresh, kObserve, kStop, kEnd };
std::string event_name(EventKind kind);

struct PathEvent {
  double t = 0.0;
  Vec x;
  EventKind kind = EventKind::kStart;
};

/// Receives the path as it is generated. Between consecutive calls the path moves by the Gaussian
/// small-jump part only; a jump is reported as a kJump event carrying the post-jump state.
class PathObserver {
 public:
  virtual ~PathObserver() = default;
  /// Continuous stretch from (t0, x0) to (t1, x1), the latter taken just before any jump at t1.
  virtual void segment(double t0, const Vec& x0, double t1, const Vec& x1) { (void)t0, (void)x0, (void)t1, (void)x1; }
  virtual void event(const PathEvent& e) { (void)e; }
};

struct PathSummary {
  Vec x_end;
  double t_end = 0.0;
  bool stopped = false;
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  std::int64_t refreshes = 0;
  double max_acceptance = 0.0;
};

/// Dominating intensity ν̄: c_upper(|h|^{-d-α_high} on ρ < |h| ≤ 1, |h|^{-d-α_low} beyond).
class Envelope {
 public:
  Envelope(const VariableOrderModel& model, double rho);
  double total_mass() const { return mass_inner_ + mass_outer_; }
  double density(double r) const;
  /// Exponent of ν̄ at radius r.
  double exponent(double r) const { return r <= 1.0 ? a_hi_ : a_lo_; }
  double constant() const { return c_; }
  double sample_radius(Rng& rng) const;

 private:
  int dim_;
  double rho_, c_, a_hi_, a_lo_;
  double mass_inner_, mass_outer_;
};

/// One path of the thinned process. `observe` lists times (sorted, within the horizon) at which
/// kObserve events are emitted.
PathSummary simulate_path(const SimulationPlan& plan, std::uint64_t index, const std::vector<double>& observe,
                          PathObserver* observer);

struct PathRecord {
  std::vector<PathEvent> events;
  PathSummary summary;
};

struct EnsembleDiagnostics {
  std::int64_t paths = 0;
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  std::int64_t stopped = 0;
  double max_acceptance = 0.0;
  double envelope_mass = 0.0;
  Json to_json() const;
};

/// All events of every path; intended for small ensembles.
std::vector<PathRecord> simulate_ensemble(const SimulationPlan& plan, EnsembleDiagnostics* diagnostics = nullptr);

/// X_T (or the stopped state) of every path.
std::vector<Vec> terminal_states(const SimulationPlan& plan, EnsembleDiagnostics* diagnostics = nullptr);

/// 𝓛f as a fast function: piecewise Chebyshev over the plan's box in d = 1, direct quadrature otherwise.
class GeneratorTable {
 public:
  GeneratorTable(ModelPtr model, std::shared_ptr<const TestFunction> f, const Vec& lo, const Vec& hi,
                 double tolerance = 1e-8);
  double operator()(const Vec& x) const;
  const TestFunction& function() const { return *f_; }

 private:
  JumpKernelSpec spec_;
  std::shared_ptr<const TestFunction> f_;
  PiecewiseChebyshev table_;
  double lo_ = 0.0, hi_ = 0.0;
  bool constant_ = false;  // 𝓛 annihilates constants exactly
};

struct MartingaleReport {
  std::string function;
  std::vector<double> times;     // includes t = 0
  std::vector<double> residual;  // mean of f(X_t) - f(x0) - ∫_0^t 𝓛f(X_s) ds
  std::vector<double> std_error;
  std::int64_t paths = 0;
  bool pass = true;  // |m̂| ≤ 3 SE at every time; SE = 0 passes only if m̂ = 0
  Json to_json() const;
};

/// Residuals for several test functions from one shared ensemble. Paths that leave the box are
/// stopped there and contribute their stopped values.
std::vector<MartingaleReport> martingale_residuals(const SimulationPlan& plan,
                                                   const std::vector<std::shared_ptr<const TestFunction>>& functions,
                                                   const std::vector<double>& times, double tolerance = 1e-8,
                                                   EnsembleDiagnostics* diagnostics = nullptr);

struct ResolventReport {
  std::string function;
  double lambda = 0.0;
  double horizon = 0.0;
  double target = 0.0;      // f(x0)
  double estimate = 0.0;    // mean of ∫_0^{τ∧T} e^{-λs}(λ - 𝓛)f(X_s) ds + 1_{τ<T} e^{-λτ} f(X_τ)
  double std_error = 0.0;
  double allowance = 0.0;   // e^{-λT}‖f‖
  bool pass = false;
  Json to_json() const;
};

/// The plan's horizon is replaced by ln(10‖f‖/tolerance)/λ so that e^{-λT}‖f‖ < tolerance/10.
ResolventReport resolvent_identity_check(SimulationPlan plan, double lambda, std::shared_ptr<const TestFunction> f,
                                         double tolerance = 1e-3, double generator_tolerance = 1e-8);

/// Neumaier-compensated mean and standard error of the mean.
std::pair<double, double> mean_and_error(const std::vector<double>& values);

}  // namespace stablelike
