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
#include <memory>

#include "common/error.hpp"
#include "doctest.h"
#include "resolvent/resolvent.hpp"

using namespace stablelike;

TEST_CASE("tabulated kernel agrees with direct time quadrature") {
  for (auto [d, alpha] : {std::pair{1, 1.5}, std::pair{1, 0.5}, std::pair{2, 1.5}, std::pair{3, 1.9}}) {
    ResolventKernel k(d, alpha);
    for (double s = 1.3e-8; s < 1e6; s *= 3.7) {
      CAPTURE(d);
      CAPTURE(alpha);
      CAPTURE(s);
      CHECK(k.unit(s) == doctest::Approx(k.direct(1.0, s)).epsilon(1e-9));
    }
  }
}

TEST_CASE("kernel is radially decreasing and scales with lambda") {
  ResolventKernel k(2, 1.2);
  double prev = k.value(3.0, 1e-4);
  for (double r = 2e-4; r < 1e3; r *= 1.5) {
    const double v = k.value(3.0, r);
    CHECK(v < prev);
    prev = v;
  }
  // r^λ(x) = λ^{d/α - 1} r^1(λ^{1/α} x).
  for (double r : {0.01, 0.7, 40.0}) {
    CHECK(k.value(5.0, r) == doctest::Approx(std::pow(5.0, 2.0 / 1.2 - 1.0) * k.value(1.0, std::pow(5.0, 1.0 / 1.2) * r)).epsilon(1e-12));
  }
}

TEST_CASE("origin value") {
  ResolventKernel k(1, 1.5);
  CHECK(k.value(2.0, 0.0) == k.at_origin(2.0));
  CHECK(k.value(2.0, 1e-12) == doctest::Approx(k.at_origin(2.0)).epsilon(1e-4));
  CHECK(k.total_mass(4.0) == doctest::Approx(0.25).epsilon(1e-8));
  ResolventKernel k2(2, 1.5);
  CHECK_THROWS_AS(k2.at_origin(1.0), PoleError);
}

TEST_CASE("mollifier") {
  for (int d = 1; d <= 3; ++d) {
    for (double eps : {1.0, 0.1}) {
      Mollifier m(d, eps);
      CHECK(m.integral() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(m(0.5 * eps) == 0.0);
      CHECK(m(0.49 * eps) > 0.0);
    }
  }
  Mollifier unit(1, 1.0), small(1, 0.25);
  for (double q : {0.0, 0.05, 0.1}) {
    CHECK(small(q) == doctest::Approx(unit(q / 0.25) / 0.25).epsilon(1e-13));
    CHECK(unit(q) == doctest::Approx(std::exp(-1.0 / (1.0 - 4.0 * q * q)) / unit.normalization()).epsilon(1e-13));
  }
}

TEST_CASE("mollified kernel jets match finite differences") {
  auto k = std::make_shared<ResolventKernel>(1, 1.5);
  MollifiedResolvent mr(k, 2.0, 0.2, 1.0);
  for (double s : {0.05, 0.3, 1.0, 3.0}) {
    CAPTURE(s);
    const double h = 1e-4;
    const auto j = mr.radial(s);
    const double fd1 = (mr.radial(s + h, 0).value - mr.radial(s - h, 0).value) / (2 * h);
    const double fd2 = (mr.radial(s + h, 1).first - mr.radial(s - h, 1).first) / (2 * h);
    CHECK(j.first == doctest::Approx(fd1).epsilon(1e-5));
    CHECK(j.second == doctest::Approx(fd2).epsilon(1e-5));
  }
  // Far from the mollifier support the smoothing barely matters.
  CHECK(mr.radial(5.0).value == doctest::Approx(mr.kernel_value(5.0)).epsilon(1e-3));
}

TEST_CASE("mollified table and bound witnesses") {
  auto k = std::make_shared<ResolventKernel>(1, 1.5);
  auto mr = std::make_shared<MollifiedResolvent>(k, 1.0, 0.2, 1.0);
  MollifiedTable table(mr);
  for (double s = 0.0; s < 4.0; s += 0.137) {
    const auto a = table.radial(s), b = mr->radial(s);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
    CHECK(std::abs(a.first - b.first) < 1e-7);
  }
  for (const auto& w : verify_resolvent_bounds(*mr)) {
    CAPTURE(w.bound_id);
    CHECK(w.pass);
    CHECK(w.fitted_constant > 0.0);
  }
}
