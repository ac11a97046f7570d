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
#include <vector>

#include "common/error.hpp"
#include "common/quadrature.hpp"
#include "density/radial_table.hpp"
#include "density/stable_density.hpp"
#include "doctest.h"

using namespace stablelike;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// (2π)^{-2} ∫∫ e^{-|u|^α} cos(u·x) du in polar form: trapezoid in angle (periodic, spectrally
// accurate) and graded Gauss-Legendre panels in the radius. Shares no code with the evaluator.
double fourier_2d(double alpha, double r) {
  const int angles = 128;
  auto angular_mean = [&](double rho) {
    double s = 0.0;
    for (int j = 0; j < angles; ++j) s += std::cos(rho * r * std::cos(2.0 * kPi * j / angles));
    return s / angles;
  };
  auto integrand = [&](double rho) { return std::exp(-std::pow(rho, alpha)) * angular_mean(rho) * rho; };
  double sum = 0.0;
  double a = 0.0;
  for (double b : {1e-3, 1e-2, 0.1, 0.5}) {
    sum += quad::gauss_legendre_fixed(integrand, a, b, 40);
    a = b;
  }
  for (; a < 30.0; a += 0.5) sum += quad::gauss_legendre_fixed(integrand, a, a + 0.5, 40);
  return sum / (2.0 * kPi);
}

}  // namespace

TEST_CASE("density matches an independent 2D Fourier quadrature") {
  DensityEvaluator ev(2, 1.5);
  for (double r : {0.0, 0.4, 1.0, 2.5}) {
    CAPTURE(r);
    CHECK(ev.density(1.0, point({r, 0.0})) == doctest::Approx(fourier_2d(1.5, r)).epsilon(1e-8));
  }
}

TEST_CASE("Cauchy closed forms") {
  DensityEvaluator ev(1, 1.0);
  CHECK(ev.density_series(point({10.0})) == doctest::Approx(1.0 / (101.0 * kPi)).epsilon(1e-10));
  CHECK(ev.gradient(1.0, point({1.0}))[0] == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-9));
  CHECK(ev.density_at_origin(2.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  DensityEvaluator ev3(3, 1.0);
  const double r = 0.7;
  CHECK(ev3.density(1.0, point({0.0, r, 0.0})) == doctest::Approx(1.0 / (kPi * kPi * std::pow(1 + r * r, 2))).epsilon(1e-9));
}

TEST_CASE("value at the origin") {
  // p_1(0) = Γ(d/α) / (α 2^{d-1} π^{d/2} Γ(d/2)).
  for (int d = 1; d <= 3; ++d) {
    for (double alpha : {0.5, 1.2, 1.9}) {
      CAPTURE(d);
      CAPTURE(alpha);
      const double ref = std::tgamma(d / alpha) / (alpha * std::pow(2.0, d - 1) * std::pow(kPi, 0.5 * d) * std::tgamma(0.5 * d));
      DensityEvaluator ev(d, alpha);
      CHECK(ev.density_at_origin(1.0) == doctest::Approx(ref).epsilon(1e-12));
      CHECK(ev.density(1.0, Vec::Zero(d)) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("series and inversion agree past the crossover") {
  DensityEvaluator ev(1, 1.5);
  const Vec x = point({ev.crossover() + 1.0});
  double bound = 0.0;
  const double s = ev.density_series(x, &bound);
  CHECK(s == doctest::Approx(ev.density_inversion(x)).epsilon(1e-9));
  CHECK(bound > 0.0);
  CHECK(bound < 1e-9 * s);
  // The truncated series is already good to 1e-6 at |x| = 5.
  const auto& p = ev.profile();
  CHECK(p.series_sum(5.0).value == doctest::Approx(p.inversion(5.0)).epsilon(1e-6));
  CHECK_THROWS_AS(ev.density_series(point({0.5 * ev.crossover()})), DomainError);
}

TEST_CASE("crossover stays finite across alpha") {
  for (int d = 1; d <= 3; ++d) {
    for (double alpha = 0.3; alpha < 1.999; alpha += 0.0731) {
      CAPTURE(d);
      CAPTURE(alpha);
      RadialProfile p(d, alpha);
      CHECK(p.crossover() < 20.0);
    }
  }
}

TEST_CASE("radial symmetry and gradient at the origin") {
  DensityEvaluator ev(2, 1.3);
  const double c = std::cos(0.7), s = std::sin(0.7);
  for (double r : {0.3, 2.0, 15.0}) {
    const Vec x = point({r, 0.5 * r});
    const Vec rx = point({c * x[0] - s * x[1], s * x[0] + c * x[1]});
    CHECK(std::abs(ev.density(1.0, x) - ev.density(1.0, rx)) <= 1e-12 * ev.density(1.0, x));
  }
  CHECK(ev.gradient(1.0, point({0.0, 0.0})).norm() == 0.0);
  const Mat h = ev.hessian(1.0, point({0.0, 0.0}));
  CHECK(h(0, 1) == 0.0);
  CHECK(h(0, 0) == doctest::Approx(h(1, 1)));
  CHECK(h(0, 0) < 0.0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(DensityEvaluator(1, 2.0), DomainError);
  CHECK_THROWS_AS(DensityEvaluator(1, 0.0), DomainError);
  DensityEvaluator ev(1, 1.5);
  CHECK_THROWS_AS(ev.density(0.0, point({1.0})), DomainError);
  CHECK_THROWS(ev.density(1.0, point({1.0, 2.0})));
}

TEST_CASE("density table reproduces the profile") {
  RadialProfile p(2, 1.5);
  DensityTable table(p);
  for (double s = 1e-3; s < 60.0; s *= 1.3) {
    CAPTURE(s);
    CHECK(table(s) == doctest::Approx(p.value(s)).epsilon(1e-9));
  }
}
