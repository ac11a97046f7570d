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

#include "montecarlo/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "common/parallel.hpp"

namespace stablelike {

void SimulationPlan::validate() const {
  if (!model) throw InvalidArgument("simulation: no model");
  if (x0.size() != model->dim()) throw InvalidArgument("simulation: x0 dimension does not match the model");
  if (!x0.allFinite()) throw DomainError("simulation: x0 must be finite");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidArgument("simulation: horizon must be finite and >= 0");
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("simulation: rho must lie in (0, 1)");
  if (paths < 1) throw InvalidArgument("simulation: need at least one path");
  if (max_step < 0.0) throw InvalidArgument("simulation: max_step must be >= 0");
  if (box_lo.size() != box_hi.size()) throw InvalidArgument("simulation: box corners differ in dimension");
  if (box_lo.size() != 0) {
    if (box_lo.size() != model->dim()) throw InvalidArgument("simulation: box dimension does not match the model");
    if (!(box_lo.array() < box_hi.array()).all()) throw InvalidArgument("simulation: box must have lo < hi");
  }
}

double SimulationPlan::refresh_step() const {
  if (max_step > 0.0) return max_step;
  return std::min(0.01, std::pow(rho, model->bounds().alpha_low) / 10.0);
}

bool SimulationPlan::stops_at(const Vec& x) const {
  if (box_lo.size() == 0) return false;
  return (x.array() < box_lo.array()).any() || (x.array() > box_hi.array()).any();
}

Json SimulationPlan::to_json() const {
  Json out{{"model", model ? model->to_json() : Json(nullptr)},
           {"x0", std::vector<double>(x0.data(), x0.data() + x0.size())},
           {"horizon", horizon},
           {"rho", rho},
           {"paths", paths},
           {"seed", seed},
           {"refresh_step", model ? refresh_step() : max_step}};
  if (box_lo.size() != 0) {
    out["box_lo"] = std::vector<double>(box_lo.data(), box_lo.data() + box_lo.size());
    out["box_hi"] = std::vector<double>(box_hi.data(), box_hi.data() + box_hi.size());
  }
  return out;
}

namespace {

Vec vector_field(const Json& j, const char* key, int dim) {
  const auto& v = j.at(key);
  if (v.is_number()) return Vec::Constant(dim, v.get<double>());
  const auto values = v.get<std::vector<double>>();
  if (static_cast<int>(values.size()) != dim) throw InvalidArgument(std::string("simulation plan: '") + key + "' has the wrong dimension");
  Vec out(dim);
  for (int i = 0; i < dim; ++i) out[i] = values[i];
  return out;
}

}  // namespace

SimulationPlan SimulationPlan::from_json(ModelPtr model, const Json& j) {
  if (!model) throw InvalidArgument("simulation plan: no model");
  if (!j.is_object()) throw InvalidArgument("simulation plan must be a JSON object");
  const int d = model->dim();
  SimulationPlan plan;
  plan.model = std::move(model);
  try {
    plan.x0 = j.contains("x0") ? vector_field(j, "x0", d) : Vec(Vec::Zero(d));
    plan.horizon = j.value("horizon", plan.horizon);
    plan.rho = j.value("rho", plan.rho);
    plan.paths = j.value("paths", plan.paths);
    plan.seed = j.value("seed", plan.seed);
    plan.max_step = j.value("max_step", plan.max_step);
    if (j.contains("box_lo") || j.contains("box_hi")) {
      plan.box_lo = vector_field(j, "box_lo", d);
      plan.box_hi = vector_field(j, "box_hi", d);
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("simulation plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

std::string event_name(EventKind kind) {
  switch (kind) {
    case EventKind::kStart: return "start";
    case EventKind::kJump: return "jump";
    case EventKind::kRefresh: return "refresh";
    case EventKind::kObserve: return "observe";
    case EventKind::kStop: return "stop";
    case EventKind::kEnd: return "end";
  }
  return "unknown";
}

Envelope::Envelope(const VariableOrderModel& model, double rho)
    : dim_(model.dim()),
      rho_(rho),
      c_(model.bounds().c_upper),
      a_hi_(model.bounds().alpha_high),
      a_lo_(model.bounds().alpha_low) {
  const double omega = sphere_area(dim_);
  mass_inner_ = c_ * omega * (std::pow(rho_, -a_hi_) - 1.0) / a_hi_;
  mass_outer_ = c_ * omega / a_lo_;
}

double Envelope::density(double r) const { return c_ * std::pow(r, -dim_ - (r <= 1.0 ? a_hi_ : a_lo_)); }

double Envelope::sample_radius(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double pick = unif(rng) * total_mass();
  double v = 1.0 - unif(rng);  // (0, 1]
  if (pick < mass_inner_) {
    const double top = std::pow(rho_, -a_hi_);
    return std::pow(top - v * (top - 1.0), -1.0 / a_hi_);
  }
  return std::pow(v, -1.0 / a_lo_);
}

namespace {

/// Observers that integrate along the path need the refresh grid even when the coefficients are constant.
class GridObserver : public PathObserver {};

struct Frozen {
  double sd = 0.0;  // per coordinate, per unit √time
};

Frozen freeze(const SimulationPlan& plan, const Vec& x) {
  const auto& m = *plan.model;
  const int d = m.dim();
  const double xi = m.xi(x);
  const double a = m.alpha(x);
  const double moment = m.weight().small_moment(x, xi, a, plan.rho);
  return {std::sqrt(sphere_area(d) / d * moment)};
}

PathSummary run_path(const SimulationPlan& plan, const Envelope& env, std::uint64_t index,
                     const std::vector<double>& observe, PathObserver* observer, bool need_grid) {
  const auto& m = *plan.model;
  const int d = m.dim();
  const double T = plan.horizon;
  const double dt = (need_grid || !m.homogeneous()) ? plan.refresh_step() : std::numeric_limits<double>::infinity();
  auto emit = [&](double t, const Vec& x, EventKind k) {
    if (observer) observer->event({t, x, k});
  };

  Rng rng = path_stream(plan.seed, index);
  std::exponential_distribution<double> wait(env.total_mass());
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;

  PathSummary out;
  double t = 0.0;
  Vec x = plan.x0;
  emit(t, x, EventKind::kStart);
  if (plan.stops_at(x)) {
    out.stopped = true;
    emit(t, x, EventKind::kStop);
  }
  std::size_t next_obs = 0;
  while (next_obs < observe.size() && observe[next_obs] <= 0.0) emit(observe[next_obs++], x, EventKind::kObserve);

  Frozen coef = freeze(plan, x);
  const bool homogeneous = m.homogeneous();
  const double a_const = homogeneous ? m.alpha(x) : 0.0;
  const double xi_const = homogeneous ? m.xi(x) : 0.0;
  double next_refresh = dt;
  double next_jump = wait(rng);
  while (!out.stopped && t < T) {
    double t1 = std::min({next_refresh, next_jump, T});
    if (next_obs < observe.size()) t1 = std::min(t1, observe[next_obs]);
    Vec x1 = x;
    if (coef.sd > 0.0) {
      const double s = coef.sd * std::sqrt(t1 - t);
      for (int i = 0; i < d; ++i) x1[i] += s * gauss(rng);
    }
    if (observer) observer->segment(t, x, t1, x1);
    t = t1;
    x = x1;
    if (plan.stops_at(x)) {
      out.stopped = true;
      emit(t, x, EventKind::kStop);
      break;
    }
    while (next_obs < observe.size() && observe[next_obs] <= t) emit(observe[next_obs++], x, EventKind::kObserve);
    if (t >= T) break;
    if (t == next_jump) {
      ++out.proposals;
      const double r = env.sample_radius(rng);
      const Vec dir = sample_direction(d, rng);
      const double a_x = homogeneous ? a_const : m.alpha(x);
      const double xi_x = homogeneous ? xi_const : m.xi(x);
      const double gap = env.exponent(r) - a_x;
      const double p = m.n(x, xi_x, r) / env.constant() * (gap == 0.0 ? 1.0 : std::pow(r, gap));
      out.max_acceptance = std::max(out.max_acceptance, p);
      if (!(p > 0.0 && p <= 1.0 + 1e-12)) {
        throw ModelError("simulation: acceptance probability " + std::to_string(p) + " outside (0, 1]; envelope bounds are inconsistent",
                         std::vector<double>(x.data(), x.data() + d));
      }
      if (unif(rng) < p) {
        ++out.accepted;
        x += r * dir;
        emit(t, x, EventKind::kJump);
        if (plan.stops_at(x)) {
          out.stopped = true;
          emit(t, x, EventKind::kStop);
          break;
        }
        if (!m.homogeneous()) coef = freeze(plan, x);
        next_refresh = t + dt;
      }
      next_jump = t + wait(rng);
    } else if (t == next_refresh) {
      ++out.refreshes;
      if (!m.homogeneous()) coef = freeze(plan, x);
      next_refresh = t + dt;
      emit(t, x, EventKind::kRefresh);
    }
  }
  if (!out.stopped) emit(t, x, EventKind::kEnd);
  out.x_end = x;
  out.t_end = t;
  return out;
}

void merge(EnsembleDiagnostics& diag, const PathSummary& s) {
  ++diag.paths;
  diag.proposals += s.proposals;
  diag.accepted += s.accepted;
  diag.stopped += s.stopped ? 1 : 0;
  diag.max_acceptance = std::max(diag.max_acceptance, s.max_acceptance);
}

std::vector<double> checked_times(const std::vector<double>& times, double horizon) {
  std::vector<double> out = times;
  std::sort(out.begin(), out.end());
  for (double t : out) {
    if (!(t >= 0.0 && t <= horizon)) throw InvalidArgument("observation times must lie in [0, horizon]");
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PathSummary simulate_path(const SimulationPlan& plan, std::uint64_t index, const std::vector<double>& observe,
                          PathObserver* observer) {
  plan.validate();
  const Envelope env(*plan.model, plan.rho);
  return run_path(plan, env, index, checked_times(observe, plan.horizon), observer,
                  dynamic_cast<GridObserver*>(observer) != nullptr);
}

Json EnsembleDiagnostics::to_json() const {
  return {{"paths", paths},       {"proposals", proposals},           {"accepted", accepted},
          {"stopped", stopped},   {"max_acceptance", max_acceptance}, {"envelope_mass", envelope_mass}};
}

namespace {

class Recorder final : public PathObserver {
 public:
  void event(const PathEvent& e) override { events.push_back(e); }
  std::vector<PathEvent> events;
};

EnsembleDiagnostics reduce(const std::vector<PathSummary>& summaries, const Envelope& env) {
  EnsembleDiagnostics diag;
  diag.envelope_mass = env.total_mass();
  for (const auto& s : summaries) merge(diag, s);
  return diag;
}

}  // namespace

std::vector<PathRecord> simulate_ensemble(const SimulationPlan& plan, EnsembleDiagnostics* diagnostics) {
  plan.validate();
  const Envelope env(*plan.model, plan.rho);
  std::vector<PathRecord> out(static_cast<std::size_t>(plan.paths));
  parallel_for(out.size(), [&](std::size_t i) {
    Recorder rec;
    out[i].summary = run_path(plan, env, i, {}, &rec, false);
    out[i].events = std::move(rec.events);
  });
  if (diagnostics) {
    std::vector<PathSummary> s;
    for (const auto& r : out) s.push_back(r.summary);
    *diagnostics = reduce(s, env);
  }
  return out;
}

std::vector<Vec> terminal_states(const SimulationPlan& plan, EnsembleDiagnostics* diagnostics) {
  plan.validate();
  const Envelope env(*plan.model, plan.rho);
  std::vector<PathSummary> summaries(static_cast<std::size_t>(plan.paths));
  parallel_for(summaries.size(), [&](std::size_t i) { summaries[i] = run_path(plan, env, i, {}, nullptr, false); });
  if (diagnostics) *diagnostics = reduce(summaries, env);
  std::vector<Vec> out;
  out.reserve(summaries.size());
  for (const auto& s : summaries) out.push_back(s.x_end);
  return out;
}

GeneratorTable::GeneratorTable(ModelPtr model, std::shared_ptr<const TestFunction> f, const Vec& lo, const Vec& hi,
                               double tolerance)
    : f_(std::move(f)) {
  spec_.model = std::move(model);
  spec_.config.tolerance = tolerance;
  constant_ = f_->family() == TestFunction::Family::kConstant;
  if (constant_ || spec_.model->dim() != 1 || lo.size() != 1) return;
  lo_ = lo[0];
  hi_ = hi[0];
  const double width = std::min(0.5, 0.5 * f_->length_scale());
  const int count = std::max(1, static_cast<int>(std::ceil((hi_ - lo_) / width)));
  std::vector<ChebyshevPanel> panels(static_cast<std::size_t>(count));
  parallel_for(panels.size(), [&](std::size_t i) {
    const double a = lo_ + (hi_ - lo_) * i / count, b = lo_ + (hi_ - lo_) * (i + 1) / count;
    panels[i] = ChebyshevPanel(
        [&](double s) { return apply(spec_, *f_, Vec::Constant(1, s)).value; }, a, b, 16);
  });
  table_ = PiecewiseChebyshev(std::move(panels));
}

double GeneratorTable::operator()(const Vec& x) const {
  if (constant_) return 0.0;
  if (!table_.empty() && x[0] >= lo_ && x[0] <= hi_) return table_(x[0]);
  return apply(spec_, *f_, x).value;
}

std::pair<double, double> mean_and_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {0.0, 0.0};
  auto neumaier = [](const std::vector<double>& v, auto&& g) {
    double sum = 0.0, c = 0.0;
    for (double x : v) {
      const double y = g(x);
      const double s = sum + y;
      c += std::abs(sum) >= std::abs(y) ? (sum - s) + y : (y - s) + sum;
      sum = s;
    }
    return sum + c;
  };
  const double mean = neumaier(values, [](double x) { return x; }) / n;
  if (n < 2) return {mean, 0.0};
  const double ss = neumaier(values, [&](double x) { return (x - mean) * (x - mean); });
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

Json MartingaleReport::to_json() const {
  return {{"function", function}, {"times", times}, {"residual", residual},
          {"std_error", std_error}, {"paths", paths}, {"pass", pass}};
}

namespace {

/// Accumulates ∫ 𝓛f(X_s) ds by the trapezoid rule over path segments and records the residual at
/// observation times; values freeze once the path stops.
class ResidualObserver final : public GridObserver {
 public:
  ResidualObserver(const std::vector<std::shared_ptr<GeneratorTable>>& tables, const Vec& x0, double* out)
      : tables_(tables), out_(out), integral_(tables.size(), 0.0) {
    for (const auto& t : tables_) f0_.push_back(t->function().value(x0));
  }
  void segment(double t0, const Vec& x0, double t1, const Vec& x1) override {
    const double h = 0.5 * (t1 - t0);
    for (std::size_t k = 0; k < tables_.size(); ++k) integral_[k] += h * ((*tables_[k])(x0) + (*tables_[k])(x1));
  }
  void event(const PathEvent& e) override {
    if (e.kind == EventKind::kStop) {
      stopped_ = true;
      stop_x_ = e.x;
    }
    if (e.kind != EventKind::kObserve) return;
    const Vec& x = stopped_ ? stop_x_ : e.x;
    for (std::size_t k = 0; k < tables_.size(); ++k) {
      out_[column_ * tables_.size() + k] = tables_[k]->function().value(x) - f0_[k] - integral_[k];
    }
    ++column_;
  }
  void finish(std::size_t columns) {
    // Observation times after a stop repeat the stopped value.
    while (column_ < columns) event({0.0, stop_x_, EventKind::kObserve});
  }

 private:
  const std::vector<std::shared_ptr<GeneratorTable>>& tables_;
  double* out_;
  std::vector<double> integral_;
  std::vector<double> f0_;
  std::size_t column_ = 0;
  bool stopped_ = false;
  Vec stop_x_;
};

}  // namespace

std::vector<MartingaleReport> martingale_residuals(const SimulationPlan& plan,
                                                   const std::vector<std::shared_ptr<const TestFunction>>& functions,
                                                   const std::vector<double>& times, double tolerance,
                                                   EnsembleDiagnostics* diagnostics) {
  plan.validate();
  if (functions.empty()) throw InvalidArgument("martingale test: no test functions");
  auto grid = times;
  grid.push_back(0.0);
  grid = checked_times(grid, plan.horizon);
  const Vec lo = plan.box_lo.size() ? plan.box_lo : Vec(plan.x0.array() - 20.0);
  const Vec hi = plan.box_hi.size() ? plan.box_hi : Vec(plan.x0.array() + 20.0);
  std::vector<std::shared_ptr<GeneratorTable>> tables;
  for (const auto& f : functions) {
    if (f->dim() != plan.model->dim()) throw InvalidArgument("martingale test: test function dimension mismatch");
    tables.push_back(std::make_shared<GeneratorTable>(plan.model, f, lo, hi, tolerance));
  }

  const Envelope env(*plan.model, plan.rho);
  const std::size_t width = grid.size() * functions.size();
  std::vector<double> values(static_cast<std::size_t>(plan.paths) * width, 0.0);
  std::vector<PathSummary> summaries(static_cast<std::size_t>(plan.paths));
  parallel_for(summaries.size(), [&](std::size_t i) {
    ResidualObserver obs(tables, plan.x0, values.data() + i * width);
    summaries[i] = run_path(plan, env, i, grid, &obs, true);
    obs.finish(grid.size());
  });
  if (diagnostics) *diagnostics = reduce(summaries, env);

  std::vector<MartingaleReport> out;
  std::vector<double> column(summaries.size());
  for (std::size_t k = 0; k < functions.size(); ++k) {
    MartingaleReport rep;
    rep.function = functions[k]->label();
    rep.times = grid;
    rep.paths = plan.paths;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      for (std::size_t i = 0; i < summaries.size(); ++i) column[i] = values[i * width + j * functions.size() + k];
      auto [mean, se] = grid[j] == 0.0 ? std::pair<double, double>{0.0, 0.0} : mean_and_error(column);
      rep.residual.push_back(mean);
      rep.std_error.push_back(se);
      const bool ok = se > 0.0 ? std::abs(mean) <= 3.0 * se : mean == 0.0;
      rep.pass = rep.pass && ok;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

Json ResolventReport::to_json() const {
  return {{"function", function}, {"lambda", lambda},       {"horizon", horizon},     {"target", target},
          {"estimate", estimate}, {"std_error", std_error}, {"allowance", allowance}, {"pass", pass}};
}

namespace {

class DiscountedObserver final : public GridObserver {
 public:
  DiscountedObserver(const GeneratorTable& table, double lambda) : table_(table), lambda_(lambda) {}
  // (λ - 𝓛)f is interpolated linearly over the segment; the discount factor is integrated exactly.
  void segment(double t0, const Vec& x0, double t1, const Vec& x1) override {
    auto g = [&](const Vec& x) { return lambda_ * table_.function().value(x) - table_(x); };
    const double h = t1 - t0, q = lambda_ * h;
    const double w0 = -std::expm1(-q) / lambda_;  // ∫_0^h e^{-λu} du
    double w1;                                     // ∫_0^h e^{-λu} u/h du
    if (q < 0.1) {
      w1 = 0.0;
      double term = 1.0;
      for (int k = 0; k < 10; ++k) {
        w1 += term / (k + 2);
        term *= -q / (k + 1);
      }
      w1 *= h;
    } else {
      w1 = (-std::expm1(-q) - q * std::exp(-q)) / (lambda_ * q);
    }
    const double g0 = g(x0), g1 = g(x1);
    value += std::exp(-lambda_ * t0) * (g0 * w0 + (g1 - g0) * w1);
  }
  void event(const PathEvent& e) override {
    // Stopped before the horizon: the boundary term of Dynkin's formula.
    if (e.kind == EventKind::kStop) value += std::exp(-lambda_ * e.t) * table_.function().value(e.x);
  }
  double value = 0.0;

 private:
  const GeneratorTable& table_;
  double lambda_;
};

}  // namespace

ResolventReport resolvent_identity_check(SimulationPlan plan, double lambda, std::shared_ptr<const TestFunction> f,
                                         double tolerance, double generator_tolerance) {
  if (!(lambda >= 1.0)) throw InvalidArgument("resolvent identity: lambda must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidArgument("resolvent identity: tolerance must be positive");
  const double norm = f->sup_norm();
  plan.horizon = norm > 0.0 ? std::max(0.0, std::log(10.0 * norm / tolerance) / lambda) : 0.0;
  plan.validate();
  const Vec lo = plan.box_lo.size() ? plan.box_lo : Vec(plan.x0.array() - 20.0);
  const Vec hi = plan.box_hi.size() ? plan.box_hi : Vec(plan.x0.array() + 20.0);
  const GeneratorTable table(plan.model, f, lo, hi, generator_tolerance);
  const Envelope env(*plan.model, plan.rho);
  std::vector<double> values(static_cast<std::size_t>(plan.paths));
  parallel_for(values.size(), [&](std::size_t i) {
    DiscountedObserver obs(table, lambda);
    run_path(plan, env, i, {}, &obs, true);
    values[i] = obs.value;
  });
  ResolventReport rep;
  rep.function = f->label();
  rep.lambda = lambda;
  rep.horizon = plan.horizon;
  rep.target = f->value(plan.x0);
  std::tie(rep.estimate, rep.std_error) = mean_and_error(values);
  rep.allowance = std::exp(-lambda * plan.horizon) * norm;
  rep.pass = std::abs(rep.estimate - rep.target) <= 3.0 * rep.std_error + rep.allowance;
  return rep;
}

}  // namespace stablelike
