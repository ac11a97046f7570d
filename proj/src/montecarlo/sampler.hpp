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
#include <random>
#include <vector>

#include "common/chebyshev.hpp"
#include "common/linalg.hpp"
#include "density/stable_density.hpp"

namespace stablelike {

using Rng = std::mt19937_64;

/// Stream for path `index` under `master`; distinct (master, index) pairs give distinct seed sequences.
Rng path_stream(std::uint64_t master, std::uint64_t index);

/// Positive (α/2)-stable variate S with E exp(-s S) = exp(-t s^{α/2}) (Kanter's representation).
double sample_subordinator(double alpha, double t, Rng& rng);

/// √(2S)·G with S from sample_subordinator and G standard normal in R^d: the isotropic stable
/// increment with characteristic function exp(-t|u|^α).
Vec sample_stable_increment(double alpha, double t, int dim, Rng& rng);

/// Uniform point on the unit sphere of R^d.
Vec sample_direction(int dim, Rng& rng);

/// CDF of one coordinate-free 1-D stable law at time t, P(X_t ≤ x), from the density module.
class StableCdf {
 public:
  explicit StableCdf(double alpha, double t = 1.0);
  double operator()(double x) const;

 private:
  double half_mass(double s) const;  // ∫_0^s p(1, r) dr

  double alpha_;
  double scale_;  // t^{-1/α}
  double split_;  // series tail beyond this radius
  std::vector<double> tail_coeffs_;
  PiecewiseChebyshev head_;
};

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;  // 1% level, asymptotic 1.6276/√n
  std::size_t n = 0;
  bool pass() const { return statistic < critical; }
};

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace stablelike
