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

#include "model/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "common/error.hpp"

namespace stablelike {
namespace {

std::vector<double> point_of(const Vec& x) { return {x.data(), x.data() + x.size()}; }

Vec random_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec u(dim);
  do {
    for (int i = 0; i < dim; ++i) u[i] = g(rng);
  } while (u.norm() < 1e-12);
  return u / u.norm();
}

// 5^d lattice over the box (odd count per axis, so the centre is included) followed by
// uniform random points.
std::vector<Vec> sample_points(const Vec& lo, const Vec& hi, int random_count, std::mt19937_64& rng) {
  const int dim = static_cast<int>(lo.size());
  constexpr int kPerAxis = 5;
  std::vector<Vec> out;
  int total = 1;
  for (int i = 0; i < dim; ++i) total *= kPerAxis;
  for (int idx = 0; idx < total; ++idx) {
    Vec x(dim);
    int rest = idx;
    for (int i = 0; i < dim; ++i) {
      const int j = rest % kPerAxis;
      rest /= kPerAxis;
      x[i] = lo[i] + (hi[i] - lo[i]) * j / (kPerAxis - 1.0);
    }
    out.push_back(x);
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < random_count; ++k) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
    out.push_back(x);
  }
  return out;
}

double checked(double v, const Vec& x, const char* what) {
  if (!std::isfinite(v)) throw ModelError(std::string(what) + " is not finite at a sampled point", point_of(x));
  return v;
}

Json vec_json(const Vec& x) { return point_of(x); }

std::vector<double> dyadic_radii(double min_radius) {
  std::vector<double> r;
  for (double z = 1.0; z >= min_radius * (1.0 - 1e-12); z *= 0.5) r.push_back(z);
  std::reverse(r.begin(), r.end());
  return r;
}

}  // namespace

ModulusEstimate estimate_modulus(const std::function<double(const Vec&)>& fn, const std::vector<double>& radii,
                                 const ProbePlan& plan, ModulusKind kind) {
  if (plan.probe_count < 2) throw InvalidArgument("estimate_modulus needs probe_count >= 2");
  if (radii.empty()) throw InvalidArgument("estimate_modulus needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw InvalidArgument("modulus radii must be positive and ascending");
    }
  }
  const int dim = static_cast<int>(plan.box_lo.size());
  std::mt19937_64 rng(plan.seed);
  const auto centres = sample_points(plan.box_lo, plan.box_hi, plan.probe_count, rng);
  std::vector<std::vector<Vec>> dirs(centres.size());
  std::vector<double> centre_values(centres.size());
  for (std::size_t c = 0; c < centres.size(); ++c) {
    centre_values[c] = checked(fn(centres[c]), centres[c], "field");
    for (int k = 0; k < plan.directions; ++k) dirs[c].push_back(random_direction(dim, rng));
  }
  ModulusEstimate out;
  out.kind = kind;
  out.radii = radii;
  out.values.assign(radii.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double best = 0.0;
    for (std::size_t c = 0; c < centres.size(); ++c) {
      for (const auto& u : dirs[c]) {
        for (double sign : {1.0, -1.0}) {
          const Vec y = centres[c] + sign * radii[i] * u;
          best = std::max(best, std::abs(checked(fn(y), y, "field") - centre_values[c]));
        }
      }
    }
    out.values[i] = best;
  }
  for (std::size_t i = 1; i < out.values.size(); ++i) out.values[i] = std::max(out.values[i], out.values[i - 1]);
  return out;
}

LogModulusCheck check_log_modulus(const ModulusEstimate& beta, double threshold) {
  const auto& r = beta.radii;
  if (r.empty() || r.front() > std::ldexp(1.0, -20) * (1.0 + 1e-12)) {
    throw InvalidArgument("log-modulus check needs radii down to 2^-20");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] / r[i - 1] > 4.0) throw InvalidArgument("log-modulus grid too coarse (neighbour ratio above 4)");
  }
  LogModulusCheck out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= 1.0) break;
    out.radii.push_back(r[i]);
    out.curve.push_back(beta.values[i] * std::abs(std::log(r[i])));
  }
  out.final_value = out.curve.front();
  // Nonincreasing toward z → 0 over the radii below 2^-10.
  out.decreasing = true;
  for (std::size_t i = 0; i + 1 < out.radii.size() && out.radii[i + 1] <= std::ldexp(1.0, -10); ++i) {
    if (out.curve[i] > out.curve[i + 1] * (1.0 + 1e-9) + 1e-15) out.decreasing = false;
  }
  out.passed = out.decreasing && out.final_value < threshold;
  return out;
}

ModulusIntegral modulus_integral(const ModulusEstimate& m, double power) {
  // Integrate G(t) = m(e^t) e^{-power t} over t = ln z on the grid part with z ≤ 1.
  std::vector<double> t, g;
  for (std::size_t i = 0; i < m.radii.size(); ++i) {
    if (m.radii[i] > 1.0) break;
    t.push_back(std::log(m.radii[i]));
    g.push_back(m.values[i] * std::exp(-power * t.back()));
  }
  if (t.empty()) throw InvalidArgument("modulus grid has no radius below 1");
  if (t.back() < 0.0) {  // extend to z = 1 holding the last modulus value
    const double last = m.values[t.size() - 1];
    t.push_back(0.0);
    g.push_back(last);
  }
  auto segment = [](double t0, double g0, double t1, double g1) {
    const double dt = t1 - t0;
    if (g0 > 0.0 && g1 > 0.0 && std::abs(g1 - g0) > 1e-14 * g0) return (g1 - g0) * dt / std::log(g1 / g0);
    return 0.5 * (g0 + g1) * dt;
  };
  // partial[i] = ∫_{t_i}^{0}
  std::vector<double> partial(t.size(), 0.0);
  for (std::size_t i = t.size() - 1; i-- > 0;) partial[i] = partial[i + 1] + segment(t[i], g[i], t[i + 1], g[i + 1]);

  ModulusIntegral out;
  // Partial sum at one decade above the finest radius, by interpolation within its segment.
  const double t_up = t[0] + std::log(10.0);
  double p_up = partial[0];
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i + 1] >= t_up) {
      const double w = (t_up - t[i]) / (t[i + 1] - t[i]);
      const double g_up = g[i] + w * (g[i + 1] - g[i]);
      p_up = partial[i + 1] + segment(t_up, g_up, t[i + 1], g[i + 1]);
      break;
    }
  }
  out.growth_per_decade = p_up > 0.0 ? (partial[0] - p_up) / p_up : (partial[0] > 0.0 ? 1.0 : 0.0);

  // Power-law tail m(z) ~ m_0 (z/z_0)^p below the grid.
  double tail = 0.0;
  if (g[0] > 0.0) {
    std::size_t j = 1;
    while (j < t.size() && !(g[j] > 0.0 && t[j] > t[0])) ++j;
    double q = -power;
    if (j < t.size()) {
      const double p = std::log(m.values[j] / m.values[0]) / (t[j] - t[0]);
      q = p - power;
    }
    tail = q > 0.0 ? g[0] / q : std::numeric_limits<double>::infinity();
  }
  out.value = partial[0] + tail;
  out.divergent = !std::isfinite(out.value) || out.growth_per_decade > 0.01;
  return out;
}

DiniGammaReport check_dini_and_gamma(const ModulusEstimate& psi, const ModulusEstimate& beta, double gamma_exp) {
  if (!(gamma_exp > 0.0)) throw InvalidArgument("gamma_exp must be positive");
  DiniGammaReport out;
  out.dini = modulus_integral(psi, 0.0);
  out.gamma = modulus_integral(beta, gamma_exp);
  out.passed = !out.dini.divergent && !out.gamma.divergent;
  return out;
}

SmallRadiusReport small_radius_checks(const ModulusEstimate& beta, double eps) {
  (void)eps;  // r^{-1-β+ε} / r^{-1+ε} = r^{-β} does not depend on ε
  SmallRadiusReport out;
  for (std::size_t i = 0; i < beta.radii.size(); ++i) {
    const double r = beta.radii[i];
    if (r > 1.0) break;
    const double b = beta.values[i];
    const double v = std::pow(r, -b);
    out.kappa4 = std::max(out.kappa4, v);
    if (b > 0.0) out.ratio_sup = std::max(out.ratio_sup, b * v / b);
  }
  return out;
}

SamplingPlan default_sampling_plan(int dim) {
  SamplingPlan p;
  p.box_lo = Vec::Constant(dim, -2.0);
  p.box_hi = Vec::Constant(dim, 2.0);
  return p;
}

SamplingPlan sampling_plan_from_json(const Json& j, int dim) {
  SamplingPlan p = default_sampling_plan(dim);
  if (j.is_null()) return p;
  if (j.contains("half_width")) {
    const double w = j.at("half_width").get<double>();
    p.box_lo = Vec::Constant(dim, -w);
    p.box_hi = Vec::Constant(dim, w);
  }
  if (j.contains("lo") && j.contains("hi")) {
    for (int i = 0; i < dim; ++i) {
      p.box_lo[i] = j.at("lo").at(i).get<double>();
      p.box_hi[i] = j.at("hi").at(i).get<double>();
    }
  }
  p.x_samples = j.value("x_samples", p.x_samples);
  p.h_min = j.value("h_min", p.h_min);
  p.h_max = j.value("h_max", p.h_max);
  p.h_per_decade = j.value("h_per_decade", p.h_per_decade);
  p.probe_count = j.value("probe_count", p.probe_count);
  p.seed = j.value("seed", p.seed);
  if (p.x_samples < 1 || !(p.h_min > 0.0 && p.h_min < p.h_max) || p.h_per_decade < 1) {
    throw InvalidArgument("sampling plan must be nonempty with 0 < h_min < h_max");
  }
  return p;
}

bool AssumptionReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.passed; });
}

const AssumptionResult& AssumptionReport::at(const std::string& id) const {
  for (const auto& i : items)
    if (i.id == id) return i;
  throw InvalidArgument("no assumption with id '" + id + "'");
}

Json AssumptionReport::to_json() const {
  Json arr = Json::array();
  for (const auto& i : items) {
    arr.push_back({{"id", i.id}, {"description", i.description}, {"passed", i.passed}, {"witness", i.witness},
                   {"constants", i.constants}});
  }
  return {{"passed", passed()}, {"assumptions", arr}};
}

AssumptionReport validate_assumptions(const VariableOrderModel& model, const SamplingPlan& plan) {
  const int dim = model.dim();
  if (plan.box_lo.size() != dim || plan.box_hi.size() != dim) throw InvalidArgument("sampling box has wrong dimension");
  if (!(model.gamma_exp() > 0.0)) throw InvalidArgument("gamma_exp must be positive");
  const auto& bd = model.bounds();
  std::mt19937_64 rng(plan.seed);
  const int lattice = static_cast<int>(std::pow(5, dim));
  const auto xs = sample_points(plan.box_lo, plan.box_hi, std::max(0, plan.x_samples - lattice), rng);

  std::vector<double> hs;
  const double decades = std::log10(plan.h_max / plan.h_min);
  const int nh = static_cast<int>(std::ceil(decades * plan.h_per_decade)) + 1;
  for (int k = 0; k < nh; ++k) hs.push_back(plan.h_min * std::pow(10.0, decades * k / (nh - 1)));

  double n_min = std::numeric_limits<double>::infinity(), n_max = -n_min;
  Json n_min_at, n_max_at;
  double a_min = n_min, a_max = -n_min, xi_min = n_min, xi_max = -n_min;
  Json a_witness, xi_witness;
  const double eps = model.holder_eps();
  // Per-decade sup of |n - ξ| / (1 ∧ |h|^ε).
  const int n_decades = static_cast<int>(std::ceil(decades));
  std::vector<double> decade_sup(static_cast<std::size_t>(n_decades + 1), 0.0);
  double ratio_sup = 0.0;
  Json ratio_at;
  for (const auto& x : xs) {
    const double a = checked(model.alpha_field()(x), x, "alpha");
    const double xi = checked(model.xi(x), x, "xi");
    if (a < a_min) a_min = a;
    if (a > a_max) a_max = a;
    if (a < bd.alpha_low - 1e-12 || a > bd.alpha_high + 1e-12 || !(a > 0.0 && a < 2.0)) a_witness = vec_json(x);
    if (xi < xi_min) xi_min = xi;
    if (xi > xi_max) xi_max = xi;
    if (!(xi > 0.0) || xi > bd.zeta * (1.0 + 1e-12)) xi_witness = vec_json(x);
    for (double h : hs) {
      const double n = model.n(x, xi, h);
      if (!std::isfinite(n)) {
        auto pt = point_of(x);
        pt.push_back(h);
        throw ModelError("n is not finite at a sampled (x, |h|)", pt);
      }
      if (n < n_min) n_min = n, n_min_at = {{"x", vec_json(x)}, {"h", h}};
      if (n > n_max) n_max = n, n_max_at = {{"x", vec_json(x)}, {"h", h}};
      const double ratio = std::abs(n - xi) / std::min(1.0, std::pow(h, eps));
      const auto bin = static_cast<std::size_t>(std::clamp(std::floor(std::log10(h / plan.h_min)), 0.0, double(n_decades)));
      decade_sup[bin] = std::max(decade_sup[bin], ratio);
      if (ratio > ratio_sup) ratio_sup = ratio, ratio_at = {{"x", vec_json(x)}, {"h", h}};
    }
  }

  AssumptionReport report;
  {
    AssumptionResult r{"n_bounds", "c_lower <= n(x,h) <= c_upper", false, {}, {}};
    r.passed = n_min > 0.0 && n_min >= bd.c_lower * (1.0 - 1e-12) && n_max <= bd.c_upper * (1.0 + 1e-12);
    r.witness = {{"min_at", n_min_at}, {"max_at", n_max_at}};
    r.constants = {{"n_min", n_min}, {"n_max", n_max}, {"c_lower", bd.c_lower}, {"c_upper", bd.c_upper}};
    report.items.push_back(r);
  }
  {
    // Fails when the ratio keeps growing at small |h|: the finest two decades exceed twice the
    // sup over |h| >= 1e-4.
    double coarse = 0.0, fine = 0.0;
    for (std::size_t b = 0; b < decade_sup.size(); ++b) {
      const double h_lo = plan.h_min * std::pow(10.0, static_cast<double>(b));
      if (h_lo >= 1e-4 * (1.0 - 1e-12)) coarse = std::max(coarse, decade_sup[b]);
      if (b < 2) fine = std::max(fine, decade_sup[b]);
    }
    AssumptionResult r{"n_near_xi", "|n(x,h) - xi(x)| <= c (1 ^ |h|^eps)", false, {}, {}};
    r.passed = std::isfinite(ratio_sup) && fine <= 2.0 * coarse + 1e-12;
    r.witness = ratio_at;
    Json sups = decade_sup;
    r.constants = {{"c", ratio_sup}, {"holder_eps", eps}, {"decade_sup", sups}, {"fine_sup", fine}, {"coarse_sup", coarse}};
    report.items.push_back(r);
  }

  ProbePlan probe{plan.box_lo, plan.box_hi, plan.probe_count, 4, plan.seed ^ 0x9e3779b97f4a7c15ULL};
  const auto radii = dyadic_radii(plan.modulus_min_radius);
  const auto psi = estimate_modulus([&](const Vec& x) { return model.xi(x); }, radii, probe, ModulusKind::kPsi);
  const auto beta = estimate_modulus([&](const Vec& x) { return model.alpha_field()(x); }, radii, probe, ModulusKind::kBeta);
  const auto dg = check_dini_and_gamma(psi, beta, model.gamma_exp());
  {
    AssumptionResult r{"xi_dini", "xi Dini continuous: int_0^1 psi(z)/z dz < inf", !dg.dini.divergent, {}, {}};
    r.constants = {{"integral", dg.dini.value}, {"growth_per_decade", dg.dini.growth_per_decade},
                   {"psi_at_1", psi.values.back()}};
    report.items.push_back(r);
  }
  {
    AssumptionResult r{"alpha_range", "0 < alpha_low <= alpha(x) <= alpha_high < 2", false, {}, {}};
    r.passed = a_witness.is_null() && bd.alpha_low > 0.0 && bd.alpha_high < 2.0;
    r.witness = a_witness;
    r.constants = {{"alpha_min", a_min}, {"alpha_max", a_max}, {"alpha_low", bd.alpha_low}, {"alpha_high", bd.alpha_high}};
    report.items.push_back(r);
  }
  {
    const auto lm = check_log_modulus(beta);
    const auto small = small_radius_checks(beta, eps);
    AssumptionResult r{"alpha_log_modulus", "beta(z) |ln z| -> 0", lm.passed, {}, {}};
    Json curve = Json::array();
    for (std::size_t i = 0; i < lm.radii.size(); ++i) curve.push_back({lm.radii[i], lm.curve[i]});
    r.constants = {{"final_value", lm.final_value}, {"decreasing", lm.decreasing}, {"threshold", 0.05},
                   {"kappa4", small.kappa4}, {"curve", curve}};
    report.items.push_back(r);
  }
  {
    AssumptionResult r{"alpha_gamma_integrable", "int_0^1 beta(z)/z^(1+gamma) dz < inf", !dg.gamma.divergent, {}, {}};
    r.constants = {{"integral", dg.gamma.value}, {"growth_per_decade", dg.gamma.growth_per_decade},
                   {"gamma_exp", model.gamma_exp()}};
    report.items.push_back(r);
  }
  {
    AssumptionResult r{"xi_bounds", "0 < xi(x) <= zeta", xi_witness.is_null(), xi_witness, {}};
    r.constants = {{"xi_min", xi_min}, {"xi_max", xi_max}, {"zeta", bd.zeta}};
    report.items.push_back(r);
  }
  return report;
}

}  // namespace stablelike
