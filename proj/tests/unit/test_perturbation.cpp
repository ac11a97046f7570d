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
#include "generator/test_function.hpp"
#include "model/model.hpp"
#include "perturbation/perturbation.hpp"

using namespace stablelike;

namespace {

std::string config(const char* name) { return std::string(STABLELIKE_CONFIG_DIR) + "/" + name + ".json"; }

const Vec kOrigin = Vec::Zero(1);

Vec at(double v) { return Vec::Constant(1, v); }

// J1 at λ = 1e4 on the reference model with a unit bump, frozen after the coarse and fine
// quadratures below agreed to within 2%.
constexpr double kGoldenJ1 = 6.8648e-3;

}  // namespace

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(1.0, 1e6, 7);
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == doctest::Approx(1e6).epsilon(1e-14));
  CHECK(g[3] == doctest::Approx(1e3).epsilon(1e-14));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 5), InvalidArgument);
}

TEST_CASE("scan rejects short or narrow grids") {
  const auto m = load_model(config("constant"));
  const auto g = TestFunction::polybump(kOrigin, 1.0);
  CHECK_THROWS_AS(contraction_scan(*m, g, kOrigin, geometric_grid(1.0, 1e6, 7)), InvalidArgument);
  CHECK_THROWS_AS(contraction_scan(*m, g, kOrigin, geometric_grid(1.0, 1e3, 9)), InvalidArgument);
  CHECK_THROWS_AS(j_terms(*m, 0.5, g, kOrigin), InvalidArgument);
  CHECK_THROWS_AS(j_terms(*m, 10.0, TestFunction::cosine(Vec::Constant(1, 1.0)), kOrigin), InvalidArgument);
}

TEST_CASE("constant model: every perturbation vanishes") {
  const auto m = load_model(config("constant"));
  const auto g = TestFunction::polybump(kOrigin, 1.0);
  const auto scan = contraction_scan(*m, g, kOrigin, geometric_grid(1.0, 1e6, 8));
  REQUIRE(scan.success());
  CHECK(*scan.lambda_tilde == 1.0);
  for (const auto& row : scan.rows) CHECK(row.sum() == 0.0);
  for (auto kind : {DifferenceKind::kLMinusMx, DifferenceKind::kMxMinusMxy, DifferenceKind::kMxyMinusMy}) {
    const auto w = bound_witness(*m, kind, 10.0, at(0.2), at(-0.1));
    CHECK(w.fitted_constant == 0.0);
    for (double v : w.lhs) CHECK(std::abs(v) < 1e-8);
  }
}

TEST_CASE("J1 on the reference model at two resolutions") {
  const auto m = load_model(config("reference"));
  const auto g = TestFunction::polybump(kOrigin, 1.0);
  PerturbationConfig coarse;
  PerturbationConfig fine;
  fine.radial_order = 12;
  fine.apply.tolerance = 1e-10;
  const double j_coarse = j_terms(*m, 1e4, g, kOrigin, coarse).total[0];
  const double j_fine = j_terms(*m, 1e4, g, kOrigin, fine).total[0];
  CHECK(j_coarse == doctest::Approx(j_fine).epsilon(0.02));
  CHECK(j_coarse == doctest::Approx(kGoldenJ1).epsilon(0.02));
}

TEST_CASE("J terms shrink when lambda doubles") {
  const auto m = load_model(config("reference"));
  const auto g = TestFunction::polybump(kOrigin, 1.0);
  ResolventCache cache;
  const auto a = j_terms(*m, 100.0, g, kOrigin, {}, &cache);
  const auto b = j_terms(*m, 200.0, g, kOrigin, {}, &cache);
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(a.total[i] >= 0.0);
    CHECK(b.total[i] <= 1.05 * a.total[i]);
    CHECK(a.total[i] == doctest::Approx(a.near[i] + a.far[i]));
  }
}

TEST_CASE("bound witnesses on the reference model") {
  const auto m = load_model(config("reference"));
  const Vec x = at(0.0), y = at(0.05);
  for (auto kind : {DifferenceKind::kLMinusMx, DifferenceKind::kMxMinusMxy, DifferenceKind::kMxyMinusMy}) {
    CAPTURE(difference_name(kind));
    const auto w = bound_witness(*m, kind, 10.0, x, y);
    CHECK(w.pass);
    CHECK(w.fitted_constant > 0.0);
  }
  // Far branch carries the 1/λ factor, so its fitted constant does not drift with λ.
  double c[3];
  int i = 0;
  for (double lambda : {1.0, 10.0, 100.0}) c[i++] = bound_witness(*m, DifferenceKind::kLMinusMx, lambda, x, y, 10.0, 100.0, 9).fitted_constant;
  CHECK(c[1] == doctest::Approx(c[0]).epsilon(0.2));
  CHECK(c[2] == doctest::Approx(c[0]).epsilon(0.2));
}

TEST_CASE("non-Dini intensity: J2 plateaus and is flagged") {
  const auto m = load_model(config("non_dini_xi"));
  const auto g = TestFunction::polybump(kOrigin, 1.0);
  PerturbationConfig cfg;
  cfg.eps = 1e-3;
  const auto scan = contraction_scan(*m, g, kOrigin, geometric_grid(1.0, 1e6, 8), cfg);
  CHECK(scan.j2_plateau);
  CHECK(scan.j2_resolved_ratio > 0.9);

  const auto ref = load_model(config("reference"));
  const auto ref_scan = contraction_scan(*ref, g, kOrigin, geometric_grid(1.0, 1e6, 8), cfg);
  CHECK_FALSE(ref_scan.j2_plateau);
}
