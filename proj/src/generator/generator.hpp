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

#include <functional>
#include <string>
#include <vector>

#include "common/function.hpp"
#include "model/model.hpp"

namespace stablelike {

/// One power-law piece w(r)·r^{-d-a} of a radial jump kernel.
struct PowerTerm {
  std::function<double(double)> weight;
  double exponent = 1.0;
  double weight_bound = 0.0;  // sup |w|
};

/// Radially symmetric jump density h ↦ Σ_j w_j(|h|)|h|^{-d-a_j}.
class RadialKernel {
 public:
  RadialKernel(int dim, std::vector<PowerTerm> terms);
  static RadialKernel stable(int dim, double alpha, double weight);

  int dim() const { return dim_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }
  double operator()(double r) const;
  /// k(r)·r^p evaluated termwise, finite where k alone overflows.
  double times_power(double r, double p) const;
  /// Bound ω Σ W_j R^{-a_j}/a_j on the kernel mass beyond R.
  double mass_bound(double radius) const;
  /// ω Σ w_j(R) R^{-a_j}/a_j, exact beyond R when the weights are constant there.
  double tail_mass(double radius) const;
  bool vanishes() const;

 private:
  int dim_;
  std::vector<PowerTerm> terms_;
};

struct ApplyConfig {
  double delta = 0.1;          // inner (Taylor) zone radius, < 1; capped at a quarter of f's length scale
  double r_max = 0.0;          // outer truncation; 0 selects it from the tail bound
  double tolerance = 1e-10;    // relative target; absolute target is tolerance·‖f‖·|kernel| scale
  double angular_scale = 1.0;  // multiplies every angular order
  int tau_order = 6;           // Gauss-Legendre order of the Taylor remainder in τ
  bool keep_compensator = true;
};

/// 𝓛f(x) split by zone: |h| ≤ δ, δ < |h| ≤ 1, 1 < |h| ≤ R, and the closed-form remainder.
struct GeneratorValue {
  double value = 0.0;
  double inner = 0.0;
  double middle = 0.0;
  double outer = 0.0;
  double tail = 0.0;
  double r_max = 0.0;
  double delta = 0.0;  // inner radius used: min(δ, L/4) for the length scale L of f
};

/// ∫ [f(x+h) - f(x) - 1_{|h|≤1} ∇f(x)·h] k(h) dh by three-zone quadrature.
GeneratorValue apply(const RadialKernel& kernel, const SmoothFunction& f, const Vec& x, const ApplyConfig& config = {});

enum class KernelVariant { kFull, kFrozen, kMixed };

/// full: n(x,h)/|h|^{d+α(x)}; frozen: ξ(z)/|h|^{d+α(z)}; mixed: ξ(y)/|h|^{d+α(z)}.
struct JumpKernelSpec {
  KernelVariant variant = KernelVariant::kFull;
  ModelPtr model;
  Vec z;  // freeze point of the index (frozen, mixed)
  Vec y;  // weight point (mixed)
  ApplyConfig config;

  /// Jump density at evaluation point x.
  RadialKernel at(const Vec& x) const;
  double density(const Vec& x, const Vec& h) const;
};

KernelVariant parse_variant(const std::string& name);
std::string variant_name(KernelVariant v);

GeneratorValue apply(const JumpKernelSpec& spec, const SmoothFunction& f, const Vec& x);

/// K(d,α) = ∫ (1 - cos v₁)|v|^{-d-α} dv by radial quadrature of the sphere-averaged cosine;
/// cached per (d, α).
double characteristic_constant(int dim, double alpha);
/// Φ(u) = c·K(d,α)·|u|^α.
double characteristic_exponent(const Vec& u, double alpha, double weight);
/// c_α = 1/K(d,α): the kernel c_α|h|^{-d-α} has exponent |u|^α.
double calibrate_reference_constant(int dim, double alpha);

enum class DifferenceKind { kLMinusMx, kMxMinusMxy, kMxyMinusMy };
DifferenceKind parse_difference(const std::string& name);
std::string difference_name(DifferenceKind kind);

/// Difference kernels between 𝓛, 𝓜_x, 𝓜_x^y and 𝓜_y:
/// (n(x,h)-ξ(x))/|h|^{d+α(x)}, (ξ(x)-ξ(y))/|h|^{d+α(x)}, ξ(y)(|h|^{-d-α(x)} - |h|^{-d-α(y)}).
RadialKernel difference_kernel(DifferenceKind kind, const VariableOrderModel& model, const Vec& x, const Vec& y);

/// The difference operator applied to r = r^{λ,ε}_y at u:
/// ∫ J(u,h) k(h) dh with J(u,h) = r(u+h) - r(u) - ∇r(u)·h 1_{|h|≤1}.
double operator_difference(DifferenceKind kind, const VariableOrderModel& model, const SmoothFunction& r,
                           const Vec& x, const Vec& y, const Vec& u, const ApplyConfig& config = {});

}  // namespace stablelike
