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

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "generator/generator.hpp"
#include "generator/test_function.hpp"
#include "resolvent/resolvent.hpp"

namespace stablelike {

struct PerturbationConfig {
  double eps = 0.1;        // mollifier scale of r^{λ,ε}_y
  int radial_order = 6;    // Gauss-Legendre nodes per panel in |x - y|
  int angular_order = 8;   // directions (d = 2) or polar nodes (d = 3) around x
  ApplyConfig apply{0.1, 0.0, 1e-8};
};

/// Unit-rate resolvent kernels shared across base points with the same index α(y).
class ResolventCache {
 public:
  std::shared_ptr<const ResolventKernel> get(int dim, double alpha);

 private:
  std::mutex mu_;
  std::map<std::pair<int, double>, std::shared_ptr<const ResolventKernel>> kernels_;
};

/// ∫ |D_i r^{λ,ε}_y(x - y)| |g(y)| dy for D_1 = 𝓛 - 𝓜_x, D_2 = 𝓜_x - 𝓜_x^y, D_3 = 𝓜_x^y - 𝓜_y.
/// `near` collects quadrature nodes with |x - y| λ^{1/4} ≤ 1, `far` the rest.
struct JTerms {
  double lambda = 0.0;
  std::array<double, 3> total{};
  std::array<double, 3> near{};
  std::array<double, 3> far{};
  int nodes = 0;
  double sum() const { return total[0] + total[1] + total[2]; }
  Json to_json() const;
};

/// Quadrature in y is polar around x with panels {0, ε/4, ε/2, ε, 2ε, ...} up to the reach of g,
/// so the nodes do not depend on λ.
JTerms j_terms(const VariableOrderModel& model, double lambda, const TestFunction& g, const Vec& x,
               const PerturbationConfig& config = {}, ResolventCache* cache = nullptr);

struct ContractionScan {
  std::vector<JTerms> rows;
  double g_norm = 0.0;
  std::optional<double> lambda_tilde;  // smallest grid λ with J₁+J₂+J₃ ≤ ‖g‖/2
  std::array<double, 3> decay_slope{};  // least-squares slope of ln J_i against ln λ (0 if J_i ≡ 0)
  std::array<double, 3> decade_ratio{};  // (J_i(λ_max)/J_i(λ_min))^{1/decades}
  bool monotone = true;                  // J_i(λ_{k+1}) ≤ 1.05 J_i(λ_k) throughout
  double j2_resolved_ratio = 0.0;        // per-decade J₂ ratio over grid points with λ ≤ ε^{-α_high}
  bool j2_plateau = false;               // that ratio exceeds 0.9
  bool success() const { return lambda_tilde.has_value(); }
  Json to_json() const;
};

/// λ grid: geometric, at least 8 points over at least 4 decades, all λ ≥ 1.
ContractionScan contraction_scan(const VariableOrderModel& model, const TestFunction& g, const Vec& x,
                                 const std::vector<double>& lambdas, const PerturbationConfig& config = {});

std::vector<double> geometric_grid(double lo, double hi, int points);

/// LHS |D r^{λ,ε}_y(u)| along u = r e₁ against the shape of the matching estimate:
///   L_minus_Mx:   |u|^{-(d+α(x)-α(y)-η)}, η = holder_eps/2        | λ^{-1}|u|^{-(d+α(x)+α(y))}
///   Mx_minus_Mxy: |ξ(x)-ξ(y)| |u|^{-d}                             | λ^{-1}|u|^{-d-2α_low}
///   Mxy_minus_My: |α(x)-α(y)| |u|^{-d-|α(x)-α(y)|} |ln(|u|/2)|      | λ^{-1}|u|^{-d-2 min α} |ln(|u|/2)|
/// with the first branch for |u| ≤ 1.
BoundWitness bound_witness(const VariableOrderModel& model, DifferenceKind kind, double lambda, const Vec& x,
                           const Vec& y, double r_min = 1e-2, double r_max = 1e2, int points = 25,
                           const PerturbationConfig& config = {});

/// The mollified resolvent at base point y as a fast function (tabulated in d = 1).
std::shared_ptr<const SmoothFunction> frozen_resolvent(const VariableOrderModel& model, const Vec& y, double lambda,
                                                       double eps, ResolventCache* cache = nullptr);

}  // namespace stablelike
