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

#include <algorithm>
#include <cmath>
#include <memory>

#include "common/error.hpp"
#include "doctest.h"
#include "generator/generator.hpp"
#include "generator/test_function.hpp"
#include "model/model.hpp"
#include "special/special_functions.hpp"

using namespace stablelike;

namespace {

std::string config(const char* name) { return std::string(STABLELIKE_CONFIG_DIR) + "/" + name + ".json"; }

Vec point(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// a f + b g for two test functions.
class Combination final : public SmoothFunction {
 public:
  Combination(double a, TestFunction f, double b, TestFunction g) : a_(a), b_(b), f_(std::move(f)), g_(std::move(g)) {}
  int dim() const override { return f_.dim(); }
  double value(const Vec& x) const override { return a_ * f_.value(x) + b_ * g_.value(x); }
  Vec gradient(const Vec& x) const override { return a_ * f_.gradient(x) + b_ * g_.gradient(x); }
  Mat hessian(const Vec& x) const override { return a_ * f_.hessian(x) + b_ * g_.hessian(x); }
  double sup_norm() const override { return std::abs(a_) * f_.sup_norm() + std::abs(b_) * g_.sup_norm(); }
  double length_scale() const override { return std::min(f_.length_scale(), g_.length_scale()); }
  double frequency() const override { return std::max(f_.frequency(), g_.frequency()); }

 private:
  double a_, b_;
  TestFunction f_, g_;
};

}  // namespace

TEST_CASE("characteristic constant") {
  CHECK(characteristic_constant(1, 1.0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(calibrate_reference_constant(1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  for (int d = 1; d <= 3; ++d) {
    for (double a : {0.3, 0.8, 1.5, 1.95}) {
      CAPTURE(d);
      CAPTURE(a);
      CHECK(characteristic_constant(d, a) * fractional_laplacian_constant(d, a) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  // Continuity in alpha: every 0.05 step changes the constant exactly as the closed form does.
  for (int d = 1; d <= 2; ++d) {
    double prev = calibrate_reference_constant(d, 0.5);
    for (int i = 1; i <= 28; ++i) {
      const double a = 0.5 + 0.05 * i;
      const double c = calibrate_reference_constant(d, a);
      CAPTURE(a);
      CHECK(c / prev == doctest::Approx(fractional_laplacian_constant(d, a) / fractional_laplacian_constant(d, a - 0.05)).epsilon(1e-9));
      prev = c;
    }
  }
  CHECK(characteristic_exponent(point({0.0, 0.0}), 1.3, 1.0) == 0.0);
  CHECK(characteristic_exponent(point({0.3, -0.4}), 1.3, 2.0) ==
        doctest::Approx(2.0 * characteristic_constant(2, 1.3) * std::pow(0.5, 1.3)).epsilon(1e-12));
}

TEST_CASE("calibrated kernel reproduces the stable symbol") {
  for (double a : {0.7, 1.0, 1.6}) {
    const auto k = RadialKernel::stable(1, a, calibrate_reference_constant(1, a));
    for (double u : {0.3, 1.0, 3.0}) {
      const Vec x = point({0.4});
      CHECK(apply(k, TestFunction::cosine(point({u})), x).value == doctest::Approx(-std::pow(u, a) * std::cos(0.4 * u)).epsilon(1e-8));
    }
  }
}

TEST_CASE("constants are annihilated") {
  const auto k = RadialKernel::stable(2, 1.4, 1.0);
  CHECK(std::abs(apply(k, TestFunction::constant(2, 3.0), point({0.1, 0.2})).value) < 1e-10);
}

TEST_CASE("linearity") {
  const auto k = RadialKernel::stable(1, 1.5, 1.2);
  const auto f = TestFunction::gaussian(point({0.2}), 0.7);
  const auto g = TestFunction::polybump(point({-0.3}), 1.5);
  const Vec x = point({0.05});
  const double lhs = apply(k, Combination(2.0, f, -0.5, g), x).value;
  const double rhs = 2.0 * apply(k, f, x).value - 0.5 * apply(k, g, x).value;
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("maximum principle at the peak of a bump") {
  for (int d = 1; d <= 3; ++d) {
    const Vec c = Vec::Constant(d, 0.25);
    for (double a : {0.6, 1.5}) {
      const auto k = RadialKernel::stable(d, a, 1.0);
      CHECK(apply(k, TestFunction::polybump(c, 1.0), c).value <= 1e-8);
      CHECK(apply(k, TestFunction::gaussian(c, 0.5), c).value <= 1e-8);
    }
  }
}

TEST_CASE("quadrature refinement and zone splitting") {
  struct Case {
    int d;
    double alpha;
    TestFunction f;
  };
  const std::vector<Case> cases = {{1, 1.5, TestFunction::gaussian(point({0.3}), 0.5)},
                                   {1, 0.7, TestFunction::polybump(point({0.0}), 2.0)},
                                   {2, 1.2, TestFunction::gaussian(point({0.0, 0.3}), 1.0)},
                                   {2, 1.9, TestFunction::cosine(point({0.6, 0.8}))},
                                   {3, 1.5, TestFunction::polybump(point({0.1, 0.0, 0.0}), 1.5)}};
  for (const auto& c : cases) {
    CAPTURE(c.f.label());
    const auto k = RadialKernel::stable(c.d, c.alpha, 1.0);
    const Vec x = Vec::Constant(c.d, 0.1);
    ApplyConfig base;
    const double v = apply(k, c.f, x, base).value;
    const double tol = base.tolerance * std::max(1.0, std::abs(v));
    ApplyConfig fine = base;
    fine.angular_scale = 2.0;
    fine.tau_order = 12;
    CHECK(std::abs(apply(k, c.f, x, fine).value - v) < tol);
    ApplyConfig half = base;
    half.delta = 0.05;
    CHECK(std::abs(apply(k, c.f, x, half).value - v) < 10.0 * tol);
  }
}

TEST_CASE("kernel variants coincide on a constant model") {
  const auto m = load_model(config("constant"));
  const auto f = TestFunction::gaussian(point({0.0}), 1.0);
  const Vec x = point({0.4});
  JumpKernelSpec full{KernelVariant::kFull, m, {}, {}, {}};
  JumpKernelSpec frozen{KernelVariant::kFrozen, m, point({-2.0}), {}, {}};
  JumpKernelSpec mixed{KernelVariant::kMixed, m, point({1.0}), point({3.0}), {}};
  const double v = apply(full, f, x).value;
  CHECK(apply(frozen, f, x).value == doctest::Approx(v).epsilon(1e-12));
  CHECK(apply(mixed, f, x).value == doctest::Approx(v).epsilon(1e-12));
  CHECK(parse_variant("mixed") == KernelVariant::kMixed);
  CHECK_THROWS_AS(parse_variant("other"), InvalidArgument);
}

TEST_CASE("difference kernels") {
  const auto ref = load_model(config("reference"));
  const Vec x = point({0.3});
  CHECK(difference_kernel(DifferenceKind::kMxyMinusMy, *ref, x, x).vanishes());
  CHECK_FALSE(difference_kernel(DifferenceKind::kMxyMinusMy, *ref, x, point({0.5})).vanishes());
  const auto cst = load_model(config("constant"));
  for (auto kind : {DifferenceKind::kLMinusMx, DifferenceKind::kMxMinusMxy, DifferenceKind::kMxyMinusMy}) {
    CHECK(difference_kernel(kind, *cst, x, point({-1.0})).vanishes());
    CHECK(parse_difference(difference_name(kind)) == kind);
  }
}

TEST_CASE("dropping the compensator") {
  const auto k = RadialKernel::stable(1, 0.6, 1.0);
  const auto f = TestFunction::gaussian(point({0.0}), 1.0);
  ApplyConfig drop;
  drop.keep_compensator = false;
  // For a radial kernel the compensator integrates to zero.
  CHECK(apply(k, f, point({0.5}), drop).value == doctest::Approx(apply(k, f, point({0.5})).value).epsilon(1e-9));
  CHECK_THROWS_AS(apply(RadialKernel::stable(1, 1.5, 1.0), f, point({0.5}), drop), InvalidArgument);
}
