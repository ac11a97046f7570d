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

#include <cmath>

#include "common/error.hpp"
#include "doctest.h"
#include "special/special_functions.hpp"

using namespace stablelike;

namespace {

constexpr double kPi = 3.141592653589793;

// Independent J_0 power series, used only as a test oracle.
double j0_series(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -(x * x / 4.0) / (k * k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("log_gamma and reciprocal_gamma") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK(reciprocal_gamma(-3.0) == 0.0);
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK_THROWS_AS(log_gamma(-2.0), PoleError);
  for (double x : {0.1, 0.5, 1.5, 3.7, 10.25, 55.5, 120.0, -0.3, -2.7, -10.5}) {
    CAPTURE(x);
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
  for (double x : {0.25, 1.0, 4.5, 17.0}) CHECK(gamma_fn(x) * reciprocal_gamma(x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bessel_j") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(std::abs(bessel_j(0.5, kPi)) < 1e-15);
  CHECK_THROWS_AS(bessel_j(60.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1.0, 2e5), DomainError);
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (j0_series(lo) * j0_series(mid) <= 0.0 ? hi : lo) = mid;
  }
  CHECK(std::abs(lo - 2.404826) < 1e-5);
  CHECK(std::abs(bessel_j(0.0, lo)) < 1e-12);
  for (double x : {0.3, 1.7, 5.0, 8.0}) CHECK(std::abs(bessel_j(0.0, x) - j0_series(x)) < 1e-12);
}

TEST_CASE("bessel_lambda matches z^-nu J_nu across the series switch") {
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (double z : {0.7, 1.99, 2.01, 6.0, 40.0}) {
      CAPTURE(nu);
      CAPTURE(z);
      const double ref = bessel_j(nu, z) * std::pow(z, -nu);
      CHECK(std::abs(bessel_lambda(nu, z) - ref) < 1e-13);
    }
  }
  CHECK(bessel_lambda(-0.5, 3.0) == doctest::Approx(std::sqrt(2.0 / kPi) * std::cos(3.0)).epsilon(1e-14));
  CHECK(bessel_lambda(0.5, 0.0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-14));
}

TEST_CASE("series coefficients against the Cauchy expansion") {
  const auto t = series_coefficients(1, 1.0, 9);
  // 1/(π(1+x²)) = (1/π)(x^-2 - x^-4 + x^-6 - ...), in powers x^-(1+k).
  CHECK(t[1] == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(t[2] == 0.0);
  CHECK(t[3] == doctest::Approx(-1.0 / kPi).epsilon(1e-13));
  CHECK(t[5] == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  for (int k = 2; k <= 8; k += 2) CHECK(t[k] == 0.0);

  // Multivariate Cauchy: Γ((d+1)/2)π^{-(d+1)/2}|x|^{-(d+1)}(1+|x|^{-2})^{-(d+1)/2}.
  const auto t3 = series_coefficients(3, 1.0, 5);
  const double lead = std::tgamma(2.0) / (kPi * kPi);
  CHECK(t3[1] == doctest::Approx(lead).epsilon(1e-13));
  CHECK(t3[3] == doctest::Approx(-2.0 * lead).epsilon(1e-13));
}

TEST_CASE("leading coefficient is positive and equals the fractional Laplacian constant") {
  for (double a = 0.05; a < 2.0; a += 0.05) {
    for (int d = 1; d <= 3; ++d) {
      const auto t = series_coefficients(d, a, 3);
      CHECK(t[1] > 0.0);
      const double ref = a * std::pow(2.0, a - 1.0) * std::tgamma(0.5 * (d + a)) /
                         (std::pow(kPi, 0.5 * d) * std::tgamma(1.0 - 0.5 * a));
      CHECK(t[1] == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("ratio decay for alpha below one") {
  for (double a : {0.3, 0.5, 0.8}) {
    const auto t = series_coefficients(2, a, 40);
    auto ratio = [&](int k) {
      int j = k + 1;
      while (t[j] == 0.0) ++j;
      return std::abs(t[j] / t[k]);
    };
    CHECK(ratio(39) < ratio(20));
  }
}
