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
#include <functional>
#include <string>
#include <vector>

#include "model/model.hpp"

namespace stablelike {

enum class ModulusKind { kBeta, kPsi };

/// Empirical modulus of continuity: values[i] bounds |f(x) - f(y)| for |x - y| ≤ radii[i].
struct ModulusEstimate {
  std::vector<double> radii;  // ascending
  std::vector<double> values;  // nondecreasing
  ModulusKind kind = ModulusKind::kBeta;
};

struct ProbePlan {
  Vec box_lo;
  Vec box_hi;
  int probe_count = 64;      // random centres, on top of a 5^d lattice that contains the box centre
  int directions = 4;        // random unit displacements per centre
  std::uint64_t seed = 20260517;
};

ModulusEstimate estimate_modulus(const std::function<double(const Vec&)>& fn, const std::vector<double>& radii,
                                 const ProbePlan& plan, ModulusKind kind);

struct LogModulusCheck {
  std::vector<double> radii;
  std::vector<double> curve;  // β(z)|ln z|
  double final_value = 0.0;
  bool decreasing = false;
  bool passed = false;
};

/// β(z)|ln z| on the grid; passes when it decreases toward a value below `threshold` at the
/// smallest radius. Refuses grids not reaching 2^-20 or with neighbour ratios above 4.
LogModulusCheck check_log_modulus(const ModulusEstimate& beta, double threshold = 0.05);

struct ModulusIntegral {
  double value = 0.0;               // ∫_0^1 m(z) z^{-1-power} dz, tail extrapolated
  double growth_per_decade = 0.0;   // relative growth of partial sums over the finest decade
  bool divergent = false;
};

/// Log-log trapezoid (exact for power laws) with a power-law tail below the grid.
ModulusIntegral modulus_integral(const ModulusEstimate& m, double power);

struct DiniGammaReport {
  ModulusIntegral dini;   // ∫ ψ(z)/z
  ModulusIntegral gamma;  // ∫ β(z)/z^{1+γ}
  bool passed = false;
};

DiniGammaReport check_dini_and_gamma(const ModulusEstimate& psi, const ModulusEstimate& beta, double gamma_exp);

struct SmallRadiusReport {
  double kappa4 = 1.0;      // sup_{r ≤ 1} r^{-β(r)}
  double ratio_sup = 1.0;   // sup over β(r) > 0 of β(r) r^{-β(r)} / β(r)
};

SmallRadiusReport small_radius_checks(const ModulusEstimate& beta, double eps);

struct SamplingPlan {
  Vec box_lo;
  Vec box_hi;
  int x_samples = 1000;
  double h_min = 1e-8;
  double h_max = 1e2;
  int h_per_decade = 4;
  int probe_count = 64;
  double modulus_min_radius = 1.0 / (1 << 24);
  std::uint64_t seed = 20260517;
};

SamplingPlan default_sampling_plan(int dim);
/// Reads box (half_width or lo/hi), x_samples, h_min, h_max, h_per_decade, probe_count, seed.
SamplingPlan sampling_plan_from_json(const Json& j, int dim);

struct AssumptionResult {
  std::string id;
  std::string description;
  bool passed = false;
  Json witness;
  Json constants;
};

struct AssumptionReport {
  std::vector<AssumptionResult> items;
  bool passed() const;
  const AssumptionResult& at(const std::string& id) const;
  Json to_json() const;
};

/// Checks the standing assumptions on sampled grids. Non-finite field values throw ModelError
/// carrying the offending point.
AssumptionReport validate_assumptions(const VariableOrderModel& model, const SamplingPlan& plan);

}  // namespace stablelike
