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

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "doctest.h"
#include "montecarlo/sampler.hpp"
#include "montecarlo/simulation.hpp"

using namespace stablelike;

namespace {

std::string config(const char* name) { return std::string(STABLELIKE_CONFIG_DIR) + "/" + name + ".json"; }

SimulationPlan constant_plan(std::int64_t paths, double rho, std::uint64_t seed) {
  SimulationPlan p;
  p.model = load_model(config("calibrated_constant"));
  p.x0 = Vec::Zero(1);
  p.paths = paths;
  p.rho = rho;
  p.seed = seed;
  return p;
}

std::shared_ptr<const TestFunction> fn(const char* spec) { return std::make_shared<TestFunction>(TestFunction::parse(spec, 1)); }

}  // namespace

TEST_CASE("stable increments follow the stable law") {
  for (double alpha : {0.8, 1.0, 1.7}) {
    Rng rng = path_stream(99, 3);
    std::vector<double> xs;
    for (int i = 0; i < 5000; ++i) xs.push_back(sample_stable_increment(alpha, 2.0, 1, rng)[0]);
    const StableCdf cdf(alpha, 2.0);
    CAPTURE(alpha);
    CHECK(ks_test(xs, [&](double x) { return cdf(x); }).pass());
  }
  const StableCdf cauchy(1.0);
  for (double x : {-40.0, -1.0, 0.0, 0.3, 7.0}) CHECK(cauchy(x) == doctest::Approx(0.5 + std::atan(x) / kPi).epsilon(1e-12));
}

TEST_CASE("streams are reproducible and distinct") {
  Rng a = path_stream(1, 5), b = path_stream(1, 5), c = path_stream(1, 6), e = path_stream(2, 5);
  const auto va = a(), vb = b(), vc = c(), ve = e();
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != ve);
  Rng r = path_stream(3, 0);
  for (int d = 1; d <= 3; ++d) CHECK(sample_direction(d, r).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("plan validation") {
  auto p = constant_plan(10, 0.1, 1);
  p.rho = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = constant_plan(0, 0.1, 1);
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = constant_plan(10, 0.1, 1);
  p.box_lo = Vec::Constant(1, 1.0);
  p.box_hi = Vec::Constant(1, -1.0);
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = constant_plan(10, 0.1, 1);
  const auto q = SimulationPlan::from_json(p.model, p.to_json());
  CHECK(q.paths == p.paths);
  CHECK(q.rho == p.rho);
  CHECK(q.seed == p.seed);
}

TEST_CASE("zero horizon keeps the start point") {
  auto p = constant_plan(3, 0.1, 4);
  p.horizon = 0.0;
  p.x0 = Vec::Constant(1, 0.7);
  for (const auto& rec : simulate_ensemble(p)) {
    CHECK(rec.summary.x_end[0] == 0.7);
    CHECK(rec.summary.accepted == 0);
    for (const auto& e : rec.events) CHECK(e.x[0] == 0.7);
  }
}

TEST_CASE("constant model: symmetry and jump counts") {
  auto p = constant_plan(20000, 0.05, 8);
  EnsembleDiagnostics diag;
  const auto xs = terminal_states(p, &diag);
  // Symmetry: the fraction of positive endpoints is 1/2.
  const double pos = static_cast<double>(std::count_if(xs.begin(), xs.end(), [](const Vec& x) { return x[0] > 0.0; })) / xs.size();
  CHECK(std::abs(pos - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(xs.size())));
  // Proposals are Poisson with mean equal to the envelope mass per unit time.
  const Envelope env(*p.model, p.rho);
  const double expected = env.total_mass() * p.horizon * p.paths;
  CHECK(std::abs(diag.proposals - expected) < 3.0 * std::sqrt(expected));
  CHECK(diag.envelope_mass == doctest::Approx(env.total_mass()));
  CHECK(diag.max_acceptance <= 1.0);
  CHECK(diag.max_acceptance > 0.0);
}

TEST_CASE("halving rho barely moves the clipped second moment") {
  // X_T has no variance for alpha < 2, so the comparison uses E[min(X_T^2, 1)].
  auto moment = [](double rho) {
    auto p = constant_plan(200000, rho, 17);
    double s = 0.0;
    for (const auto& x : terminal_states(p)) s += std::min(x[0] * x[0], 1.0);
    return s / p.paths;
  };
  const double a = moment(0.1), b = moment(0.05);
  CHECK(std::abs(b / a - 1.0) < 0.02);
}

TEST_CASE("ensembles do not depend on the worker count") {
  SimulationPlan p;
  p.model = load_model(config("reference"));
  p.x0 = Vec::Zero(1);
  p.paths = 300;
  p.rho = 0.05;
  p.seed = 5;
  const int saved = thread_limit();
  set_thread_limit(1);
  const auto a = terminal_states(p);
  set_thread_limit(3);
  const auto b = terminal_states(p);
  set_thread_limit(saved);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i][0] == b[i][0]);
}

TEST_CASE("martingale residuals: degenerate and exact cases") {
  auto p = constant_plan(4000, 0.05, 21);
  const auto reports = martingale_residuals(p, {fn("constant:value=2"), fn("cosine:u=0.7")}, {0.5, 1.0});
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.times.front() == 0.0);
    CHECK(r.residual.front() == 0.0);
    CHECK(r.pass);
  }
  for (double v : reports[0].residual) CHECK(v == 0.0);
  for (double v : reports[0].std_error) CHECK(v == 0.0);
}

TEST_CASE("resolvent identity for a constant function") {
  auto p = constant_plan(500, 0.05, 3);
  p.max_step = 0.05;
  const auto r = resolvent_identity_check(p, 2.0, fn("constant:value=1.5"));
  CHECK(r.pass);
  CHECK(std::abs(r.estimate - 1.5) <= r.allowance + 1e-12);
}

TEST_CASE("generator table matches direct evaluation") {
  auto model = load_model(config("reference"));
  const auto f = fn("gaussian:center=0.5;width=0.5");
  GeneratorTable table(model, f, Vec::Constant(1, -4.0), Vec::Constant(1, 4.0));
  JumpKernelSpec spec;
  spec.model = model;
  spec.config.tolerance = 1e-8;
  for (double x = -3.9; x < 4.0; x += 0.61) {
    const Vec v = Vec::Constant(1, x);
    CHECK(table(v) == doctest::Approx(apply(spec, *f, v).value).epsilon(1e-7));
  }
}
