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

#include <vector>

namespace stablelike {

/// ln|Γ(x)|. Throws PoleError at nonpositive integers.
double log_gamma(double x);
/// Γ(x). Throws PoleError at nonpositive integers.
double gamma_fn(double x);
/// 1/Γ(x); entire, exactly zero at nonpositive integers.
double reciprocal_gamma(double x);
/// sin(πx) with exact zeros at integers.
double sin_pi(double x);

/// J_ν(x) for 0 ≤ ν ≤ 50, 0 ≤ x ≤ 1e5. Refuses inputs outside that envelope.
double bessel_j(double nu, double x);

/// Λ_ν(z) = z^{-ν} J_ν(z), extended continuously to z = 0 and to ν = -1/2.
/// Closed forms are used for half-integer orders, a power series for z ≤ 2.
double bessel_lambda(double nu, double z);

/// Coefficients a_k (k = 1..K) of p_1(0,x) ~ Σ a_k |x|^{-(d+kα)}.
struct CoefficientTable {
  int dim = 1;
  double alpha = 1.0;
  std::vector<double> a;         // a[k-1] = a_k
  std::vector<double> envelope;  // |a_k| with the factor |sin(πkα/2)| replaced by 1

  int order() const { return static_cast<int>(a.size()); }
  double operator[](int k) const { return a[static_cast<std::size_t>(k - 1)]; }
  double bound(int k) const { return envelope[static_cast<std::size_t>(k - 1)]; }
};

/// c_{d,z} = 2^z π^{-d/2} Γ((d+z)/2) / Γ(-z/2); zero at the poles of Γ(-z/2).
double stable_constant(int dim, double z);

CoefficientTable series_coefficients(int dim, double alpha, int k_max);

/// C_{d,α} = α 2^{α-1} Γ((d+α)/2) / (π^{d/2} Γ(1-α/2)): the weight for which the kernel
/// C/|h|^{d+α} has symbol |u|^α. Equals the leading tail coefficient a_1.
double fractional_laplacian_constant(int dim, double alpha);

}  // namespace stablelike
