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

#include <memory>
#include <functional>
#include <string>
#include <vector>

#include "common/chebyshev.hpp"
#include "common/function.hpp"
#include "common/linalg.hpp"
#include "model/fields.hpp"
#include "density/radial_table.hpp"
#include "density/stable_density.hpp"

namespace stablelike {

struct ResolventConfig {
  double tolerance = 1e-11;  // relative target of the time quadrature
  double s_min = 1e-8;       // tabulated range of the unit profile
  double s_max = 1e6;
  int panels_per_decade = 2;
  int nodes = 16;
};

/// r^λ(x) = ∫_0^∞ e^{-λt} p_t(0,x) dt for the isotropic α-stable law with symbol e^{-t|u|^α}.
/// Evaluated through the unit profile r^1 and r^λ(x) = λ^{d/α-1} r^1(λ^{1/α} x).
class ResolventKernel {
 public:
  explicit ResolventKernel(std::shared_ptr<const DensityEvaluator> density, const ResolventConfig& config = {});
  ResolventKernel(int dim, double alpha, const ResolventConfig& config = {});

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }

  /// Time quadrature (substitution t = |x|^α u, split at u = 1); relative accuracy ~1e-10.
  double direct(double lambda, double r) const;
  /// Tabulated value of r^λ at radius r > 0.
  double value(double lambda, double r) const;
  double value(double lambda, const Vec& x) const;
  /// r^1 from the table.
  double unit(double s) const;
  /// p_1(0)Γ(1-d/α)λ^{d/α-1}; PoleError when d ≥ α.
  double at_origin(double lambda) const;
  /// ω_{d-1}∫ r^λ(s) s^{d-1} ds; should equal 1/λ.
  double total_mass(double lambda) const;

  const DensityEvaluator& density() const { return *density_; }

 private:
  double direct_unit(double s) const;

  int dim_;
  double alpha_;
  ResolventConfig config_;
  std::shared_ptr<const DensityEvaluator> density_;
  DensityTable table_;
  PiecewiseChebyshev log_profile_;  // ln r^1 against ln s
  double ln_lo_, ln_hi_;
  double slope_lo_, slope_hi_;
};

/// φ(x) = Z^{-1} exp(-1/(1-4|x|^2)) on |x| < 1/2 and its scaled copy φ_ε(x) = ε^{-d} φ(x/ε).
class Mollifier {
 public:
  Mollifier(int dim, double eps);

  int dim() const { return dim_; }
  double eps() const { return eps_; }
  double support() const { return 0.5 * eps_; }
  double normalization() const { return z_; }

  /// φ_ε at radius q.
  double operator()(double q) const;
  double operator()(const Vec& x) const { return (*this)(x.norm()); }
  /// φ_ε'(q)/q and (φ_ε''(q) - φ_ε'(q)/q)/q^2; the gradient is g1(|x|) x and the Hessian
  /// g1 I + g2 x xᵀ.
  double g1(double q) const;
  double g2(double q) const;
  /// Signed one-dimensional derivatives of φ_ε (d = 1).
  double d1(double w) const { return g1(std::abs(w)) * w; }
  double d2(double w) const { return g1(std::abs(w)) + g2(std::abs(w)) * w * w; }

  /// ∫ φ_ε over R^d by radial quadrature.
  double integral() const;

 private:
  int dim_;
  double eps_;
  double z_;
};

struct RadialJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// r^{λ,ε}_y = r_y^λ * φ_ε where r_y^λ is the resolvent of the constant-coefficient operator
/// with kernel ξ(y)/|h|^{d+α(y)}. That operator has symbol κ|u|^α with κ = ξ(y)/C_{d,α}, so
/// r_y^λ = κ^{-1} r^{λ/κ}. Derivatives are taken on the mollifier.
class MollifiedResolvent final : public SmoothFunction {
 public:
  MollifiedResolvent(std::shared_ptr<const ResolventKernel> kernel, double lambda, double eps, double xi_y);

  int dim() const override { return kernel_->dim(); }
  double lambda() const { return lambda_; }
  double eps() const { return mollifier_.eps(); }
  double alpha() const { return kernel_->alpha(); }
  double xi() const { return xi_; }
  /// Symbol constant κ = ξ(y)/C_{d,α(y)}.
  double kappa() const { return kappa_; }
  const Mollifier& mollifier() const { return mollifier_; }
  const ResolventKernel& kernel() const { return *kernel_; }

  /// Unmollified r_y^λ at radius r.
  double kernel_value(double r) const;

  /// Radial profile and its first two radial derivatives at s = |x|; `order` in 0..2.
  RadialJet radial(double s, int order = 2) const;
  double value(const Vec& x) const override { return radial(x.norm(), 0).value; }
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  /// Radially decreasing, so the sup is the value at the origin.
  double sup_norm() const override { return sup_; }
  double length_scale() const override { return 0.5 * eps(); }

 private:
  double integrate(double s, int which) const;
  double cancellation_floor(double rho, int which) const;

  std::shared_ptr<const ResolventKernel> kernel_;
  double lambda_;
  double xi_;
  double kappa_;
  double mu_;  // λ/κ
  double prefactor_;
  Mollifier mollifier_;
  double sup_ = 0.0;
};

/// Piecewise Chebyshev copy of a mollified resolvent and its two radial derivatives: panels of
/// width ε/8 on [0, 2ε], then geometric panels (ratio 1.5) up to 10^6; beyond that the unmollified
/// kernel with power-law derivatives.
class MollifiedTable final : public SmoothFunction {
 public:
  explicit MollifiedTable(std::shared_ptr<const MollifiedResolvent> source, int nodes = 16);

  const MollifiedResolvent& source() const { return *source_; }
  RadialJet radial(double s) const;

  int dim() const override { return source_->dim(); }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  double sup_norm() const override { return source_->sup_norm(); }
  double length_scale() const override { return source_->length_scale(); }

 private:
  std::shared_ptr<const MollifiedResolvent> source_;
  PiecewiseChebyshev value_, first_, second_;
  double end_;
};

/// Fitted constant sup(LHS/RHS) over a radial grid and its stability under 2x refinement.
struct BoundWitness {
  std::string bound_id;
  std::vector<double> radii;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double fitted_constant = 0.0;
  double refined_constant = 0.0;
  bool pass = false;
  Json to_json() const;
};

/// Builds a witness from LHS and RHS functions on `points` log-spaced radii in [r_min, r_max];
/// the refined constant uses 2·points - 1 radii.
BoundWitness fit_bound(const std::string& id, const std::function<double(double)>& lhs,
                       const std::function<double(double)>& rhs, double r_min, double r_max, int points,
                       double stability = 0.2);

/// Value, gradient-sum and Hessian-sum witnesses against (λ^{-1}|x|^{-2α} ∧ 1)|x|^{-d+α-k},
/// evaluated along the first axis.
std::vector<BoundWitness> verify_resolvent_bounds(const MollifiedResolvent& mr, double r_min = 1e-2,
                                                  double r_max = 1e2, int points = 41);

}  // namespace stablelike
