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

#include "special/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "common/linalg.hpp"

namespace stablelike {
namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLogSqrtTwoPi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

double lanczos_sum(double zm1) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (zm1 + i);
  return a;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// ln|1/Γ(y)| and its sign for y < 0 non-integer, via the reflection formula.
double log_abs_rgamma_negative(double y, int* sign) {
  const double s = sin_pi(y);
  *sign = s > 0 ? 1 : -1;
  return std::log(std::abs(s)) + log_gamma(1.0 - y) - kLogPi;
}

}  // namespace

double sin_pi(double x) {
  const double n = std::nearbyint(2.0 * x);
  const double y = x - 0.5 * n;
  const long q = static_cast<long>(std::fmod(n, 4.0) + 4.0) % 4;
  switch (q) {
    case 0:
      return std::sin(kPi * y);
    case 1:
      return std::cos(kPi * y);
    case 2:
      return -std::sin(kPi * y);
    default:
      return -std::cos(kPi * y);
  }
}

double log_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(x)) throw PoleError("log_gamma: pole at nonpositive integer");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) return kLogPi - std::log(std::abs(sin_pi(x))) - log_gamma(1.0 - x);
  const double zm1 = x - 1.0;
  const double t = zm1 + kLanczosG + 0.5;
  return kLogSqrtTwoPi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at nonpositive integer");
  if (x < 0.5) return kPi / (sin_pi(x) * gamma_fn(1.0 - x));
  if (x > 140.0) return std::exp(log_gamma(x));
  const double zm1 = x - 1.0;
  const double t = zm1 + kLanczosG + 0.5;
  const double half = std::pow(t, 0.5 * (zm1 + 0.5));
  return std::exp(kLogSqrtTwoPi - t) * half * half * lanczos_sum(zm1);
}

double reciprocal_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("reciprocal_gamma: non-finite argument");
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0) return x > 170.0 ? std::exp(-log_gamma(x)) : 1.0 / gamma_fn(x);
  if (1.0 - x < 170.0) return sin_pi(x) * gamma_fn(1.0 - x) / kPi;
  int sign = 1;
  const double l = log_abs_rgamma_negative(x, &sign);
  return sign * std::exp(l);
}

double bessel_j(double nu, double x) {
  if (!std::isfinite(nu) || !std::isfinite(x)) throw DomainError("bessel_j: non-finite input");
  if (nu < 0.0 || nu > 50.0 || x < 0.0 || x > 1e5) throw DomainError("bessel_j: input outside 0<=nu<=50, 0<=x<=1e5");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_j(nu, x);
}

double bessel_lambda(double nu, double z) {
  z = std::abs(z);
  if (z <= 2.0) {
    // 2^{-ν} Σ (-z²/4)^k / (k! Γ(ν+k+1))
    const double q = -0.25 * z * z;
    double term = reciprocal_gamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= q / (k * (nu + k));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::pow(2.0, -nu) * sum;
  }
  constexpr double kSqrt2OverPi = 0.79788456080286535588;
  if (nu == -0.5) return kSqrt2OverPi * std::cos(z);
  if (nu == 0.5) return kSqrt2OverPi * std::sin(z) / z;
  if (nu == 1.5) return kSqrt2OverPi * (std::sin(z) / z - std::cos(z)) / (z * z);
  if (nu == 2.5) return kSqrt2OverPi * ((3.0 / (z * z) - 1.0) * std::sin(z) - 3.0 * std::cos(z) / z) / (z * z * z);
  return boost::math::cyl_bessel_j(nu, z) * std::pow(z, -nu);
}

double stable_constant(int dim, double z) {
  const double y = -0.5 * z;
  if (!(z > 0.0)) throw DomainError("stable_constant: order must be positive");
  if (is_nonpositive_integer(y)) return 0.0;
  int sign = 1;
  const double log_rg = log_abs_rgamma_negative(y, &sign);
  const double log_c = z * std::log(2.0) - 0.5 * dim * kLogPi + log_gamma(0.5 * (dim + z)) + log_rg;
  return sign * std::exp(log_c);
}

CoefficientTable series_coefficients(int dim, double alpha, int k_max) {
  if (dim < 1) throw InvalidArgument("series_coefficients: dim must be >= 1");
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("series_coefficients: alpha must lie in (0,2)");
  if (k_max < 3) throw InvalidArgument("series_coefficients: need at least 3 terms");
  CoefficientTable table;
  table.dim = dim;
  table.alpha = alpha;
  table.a.resize(static_cast<std::size_t>(k_max));
  table.envelope.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const double c = stable_constant(dim, k * alpha);
    const double mag = std::exp(std::log(std::abs(c)) - log_gamma(k + 1.0));
    const double value = c == 0.0 ? 0.0 : std::copysign(mag, c);
    table.a[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? value : -value;
    const double z = k * alpha;
    table.envelope[static_cast<std::size_t>(k - 1)] =
        std::exp(z * std::log(2.0) - (0.5 * dim + 1.0) * kLogPi + log_gamma(0.5 * (dim + z)) +
                 log_gamma(1.0 + 0.5 * z) - log_gamma(k + 1.0));
  }
  return table;
}

double fractional_laplacian_constant(int dim, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("fractional_laplacian_constant: alpha must lie in (0,2)");
  const double log_c = std::log(alpha) + (alpha - 1.0) * std::log(2.0) + log_gamma(0.5 * (dim + alpha)) -
                       0.5 * dim * kLogPi - log_gamma(1.0 - 0.5 * alpha);
  return std::exp(log_c);
}

}  // namespace stablelike
