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
#include <mutex>
#include <vector>

#include "common/linalg.hpp"
#include "special/special_functions.hpp"

namespace stablelike {

struct DensityConfig {
  int k_max = 40;           // series terms
  double tolerance = 1e-10;  // relative target for inversion and series truncation
  double m_min = 2.0;        // crossover search range and step
  double m_max = 20.0;
  double m_step = 0.5;
  int max_panels = 200000;  // oscillatory panels before the inversion gives up
};

struct SeriesValue {
  double value = 0.0;
  double bound = 0.0;  // envelope of the first omitted term
  int terms = 0;
};

/// Radial profile s ↦ p(s) of the isotropic density with symbol e^{-|u|^α} in R^D at t = 1.
/// Evaluates the tail series for s ≥ M and the radial Fourier inversion below M.
class RadialProfile {
 public:
  RadialProfile(int dim, double alpha, const DensityConfig& config = {});

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const DensityConfig& config() const { return config_; }
  const CoefficientTable& coefficients() const { return coeffs_; }
  /// Crossover radius; +inf when no radius in the search range qualified.
  double crossover() const { return crossover_; }

  double value(double s) const { return s >= crossover_ ? tail(s) : inversion(s); }
  /// Series truncated at the order fixed by the crossover radius (Horner in s^{-α}); s ≥ M.
  double tail(double s) const;
  bool uses_series(double s) const { return s >= crossover_; }
  double at_origin() const { return origin_; }

  /// Optimally truncated tail series; valid for any s > 0 but only trusted beyond M.
  SeriesValue series_sum(double s) const;
  /// (2π)^{-D/2} ∫ e^{-r^α} r^{D-1} Λ_{D/2-1}(rs) dr. Throws ConvergenceError on failure.
  double inversion(double s) const;

 private:
  double choose_crossover() const;

  int dim_;
  double alpha_;
  DensityConfig config_;
  CoefficientTable coeffs_;
  double origin_;
  double crossover_;
  std::vector<double> tail_poly_;  // a_1..a_n with n the optimal order at M
};

/// p_t(0,x) for the isotropic α-stable law in R^d with its gradient and Hessian. Derivatives use
/// ∇p_d(x) = -2π p_{d+2}(|x|) x, so profiles in dimensions d+2 and d+4 are built on first use.
class DensityEvaluator {
 public:
  DensityEvaluator(int dim, double alpha, const DensityConfig& config = {});

  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const RadialProfile& profile() const { return *profiles_[0]; }
  /// Profile in dimension d + 2·shift (shift = 0, 1, 2).
  const RadialProfile& shifted_profile(int shift) const;
  double crossover() const { return profiles_[0]->crossover(); }

  double density(double t, const Vec& x) const;
  Vec gradient(double t, const Vec& x) const;
  Mat hessian(double t, const Vec& x) const;

  double density_radial(double t, double r) const;
  double density_at_origin(double t) const;
  /// Tail series at |x|; refuses |x| < M.
  double density_series(const Vec& x, double* bound = nullptr) const;
  double density_inversion(const Vec& x) const;

 private:
  void check_point(double t, const Vec& x) const;

  int dim_;
  double alpha_;
  DensityConfig config_;
  mutable std::unique_ptr<RadialProfile> profiles_[3];
  mutable std::once_flag once_[3];
};

/// Closed form (2π)^{-d} ω_{d-1} Γ(d/α)/α scaled to time t.
double density_at_origin(double t, int dim, double alpha);

}  // namespace stablelike
