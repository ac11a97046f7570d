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
#include <string>

#include "common/error.hpp"
#include "doctest.h"
#include "model/assumptions.hpp"
#include "model/model.hpp"

using namespace stablelike;

namespace {

std::string config(const char* name) { return std::string(STABLELIKE_CONFIG_DIR) + "/" + name + ".json"; }

Json base_config() {
  return Json::parse(R"({"dim": 1,
    "alpha": {"family": "constant", "params": {"value": 1.5}},
    "xi": {"family": "constant", "params": {"value": 1.0}},
    "n": {"family": "match_xi"}})");
}

std::vector<std::string> failed_ids(const AssumptionReport& r) {
  std::vector<std::string> out;
  for (const auto& item : r.items) {
    if (!item.passed) out.push_back(item.id);
  }
  return out;
}

}  // namespace

TEST_CASE("reference model fields and bounds") {
  const auto m = load_model(config("reference"));
  CHECK(m->dim() == 1);
  CHECK(m->bounds().alpha_low == doctest::Approx(1.3));
  CHECK(m->bounds().alpha_high == doctest::Approx(1.7));
  CHECK(m->bounds().zeta == doctest::Approx(1.1));
  CHECK_FALSE(m->homogeneous());
  Vec x(1);
  for (double v : {-3.0, -0.2, 0.0, 0.9, 7.5}) {
    x[0] = v;
    CHECK(m->alpha(x) == doctest::Approx(1.5 + 0.2 * std::sin(v)));
    CHECK(m->xi(x) == doctest::Approx(1.0 + 0.1 * std::exp(-v * v)).epsilon(1e-12));
    for (double h : {1e-6, 0.3, 5.0}) {
      CHECK(m->n(x, h) >= m->bounds().c_lower);
      CHECK(m->n(x, h) <= m->bounds().c_upper);
    }
  }
}

TEST_CASE("configs round-trip through JSON") {
  for (const char* name : {"reference", "constant", "calibrated_constant", "oscillating_n", "log_alpha", "non_dini_xi"}) {
    CAPTURE(name);
    const auto m = load_model(config(name));
    const auto again = VariableOrderModel::from_json(m->to_json());
    Vec x(1);
    for (double v : {-1.3, 0.0, 0.01, 2.2}) {
      x[0] = v;
      CHECK(again->alpha(x) == m->alpha(x));
      CHECK(again->xi(x) == m->xi(x));
      CHECK(again->n(x, 0.37) == m->n(x, 0.37));
    }
  }
}

TEST_CASE("constant models are homogeneous") {
  CHECK(load_model(config("constant"))->constant_coefficients());
  const auto cal = load_model(config("calibrated_constant"));
  CHECK(cal->constant_coefficients());
  // Calibrated weight for α = 1.5, d = 1: 1.5 · 2^{0.5} Γ(1.25) / (√π Γ(0.25)).
  const double c = 1.5 * std::sqrt(2.0) * std::tgamma(1.25) / (std::sqrt(M_PI) * std::tgamma(0.25));
  CHECK(cal->xi(Vec::Zero(1)) == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("malformed configs are rejected") {
  Json j = base_config();
  j.erase("xi");
  CHECK_THROWS_AS(VariableOrderModel::from_json(j), InvalidArgument);

  j = base_config();
  j["alpha"] = Json::parse(R"({"family": "sinusoidal", "params": {"base": 1.5, "amp": 0.6}})");
  CHECK_THROWS_AS(VariableOrderModel::from_json(j), ModelError);

  j = base_config();
  j["alpha"]["family"] = "cubic";
  CHECK_THROWS(VariableOrderModel::from_json(j));

  j = base_config();
  j["dim"] = 4;
  CHECK_THROWS_AS(VariableOrderModel::from_json(j), InvalidArgument);

  CHECK_THROWS_AS(load_model(config("does_not_exist")), IoError);
}

TEST_CASE("modulus integrals") {
  // Power-law modulus z^{1/2}: ∫_0^1 z^{1/2} / z dz = 2 and ∫_0^1 z^{1/2} / z^{1.25} dz = 4.
  ModulusEstimate m;
  for (int k = 24; k >= 0; --k) {
    m.radii.push_back(std::ldexp(1.0, -k));
    m.values.push_back(std::sqrt(m.radii.back()));
  }
  const auto dini = modulus_integral(m, 0.0);
  CHECK_FALSE(dini.divergent);
  CHECK(dini.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(modulus_integral(m, 0.25).value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(modulus_integral(m, 0.6).divergent);

  // 1/|ln z| is not Dini.
  ModulusEstimate slow;
  for (int k = 24; k >= 1; --k) {
    slow.radii.push_back(std::ldexp(1.0, -k));
    slow.values.push_back(1.0 / std::abs(std::log(slow.radii.back())));
  }
  CHECK(modulus_integral(slow, 0.0).divergent);
  CHECK_FALSE(check_log_modulus(slow).passed);
}

TEST_CASE("estimated modulus of a Lipschitz function") {
  ProbePlan plan;
  plan.box_lo = Vec::Constant(1, -2.0);
  plan.box_hi = Vec::Constant(1, 2.0);
  std::vector<double> radii;
  for (int k = 20; k >= 0; --k) radii.push_back(std::ldexp(1.0, -k));
  const auto m = estimate_modulus([](const Vec& x) { return std::sin(x[0]); }, radii, plan, ModulusKind::kBeta);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(m.values[i] <= radii[i] * (1.0 + 1e-12));
    CHECK(m.values[i] >= 0.5 * radii[i]);
  }
  CHECK(check_log_modulus(m).passed);
}

TEST_CASE("validators separate the presets") {
  for (const char* name : {"constant", "reference", "calibrated_constant"}) {
    CAPTURE(name);
    const auto m = load_model(config(name));
    CHECK(validate_assumptions(*m, default_sampling_plan(1)).passed());
  }
  const auto osc = load_model(config("oscillating_n"));
  CHECK(failed_ids(validate_assumptions(*osc, default_sampling_plan(1))) == std::vector<std::string>{"n_near_xi"});
  const auto nd = load_model(config("non_dini_xi"));
  CHECK(failed_ids(validate_assumptions(*nd, default_sampling_plan(1))) == std::vector<std::string>{"xi_dini"});
}
