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

#include "generator/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "common/error.hpp"
#include "common/quadrature.hpp"
#include "special/special_functions.hpp"

namespace stablelike {

// ---------------------------------------------------------------------------------------------
// Kernels

RadialKernel::RadialKernel(int dim, std::vector<PowerTerm> terms) : dim_(dim), terms_(std::move(terms)) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("kernel: dimension must be 1..3");
  for (const auto& t : terms_) {
    if (!(t.exponent > 0.0 && t.exponent < 2.0)) throw DomainError("kernel: exponent must lie in (0, 2)");
    if (!t.weight) throw InvalidArgument("kernel: missing weight");
  }
}

RadialKernel RadialKernel::stable(int dim, double alpha, double weight) {
  return RadialKernel(dim, {{[weight](double) { return weight; }, alpha, std::abs(weight)}});
}

double RadialKernel::operator()(double r) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    const double w = t.weight(r);
    if (w != 0.0) sum += w * std::pow(r, -dim_ - t.exponent);
  }
  return sum;
}

double RadialKernel::times_power(double r, double p) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    const double w = t.weight(r);
    if (w != 0.0) sum += w * std::pow(r, p - dim_ - t.exponent);
  }
  return sum;
}

double RadialKernel::mass_bound(double radius) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.weight_bound * std::pow(radius, -t.exponent) / t.exponent;
  return sphere_area(dim_) * sum;
}

double RadialKernel::tail_mass(double radius) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    const double w = t.weight(radius);
    if (w != 0.0) sum += w * std::pow(radius, -t.exponent) / t.exponent;
  }
  return sphere_area(dim_) * sum;
}

bool RadialKernel::vanishes() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PowerTerm& t) { return t.weight_bound == 0.0; });
}

namespace {

// Symmetric rule on S^{d-1} (weights sum to the sphere area); h and -h carry equal weight.
struct AngularRule {
  std::vector<Vec> dirs;
  std::vector<double> weights;
};

AngularRule make_angular_rule(int dim, int order) {
  AngularRule rule;
  if (dim == 1) {
    Vec p(1), m(1);
    p << 1.0;
    m << -1.0;
    rule.dirs = {p, m};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (dim == 2) {
    const int n = 2 * ((order + 1) / 2);
    for (int k = 0; k < n; ++k) {
      const double th = (k + 0.5) * 2.0 * kPi / n;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      rule.dirs.push_back(v);
      rule.weights.push_back(2.0 * kPi / n);
    }
    return rule;
  }
  const int nt = std::max(2, order / 2);
  const int nphi = 2 * nt;
  const auto& gl = quad::gauss_legendre(nt);
  std::vector<std::pair<double, double>> tw;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    tw.push_back({gl.nodes[i], gl.weights[i]});
    if (gl.nodes[i] != 0.0) tw.push_back({-gl.nodes[i], gl.weights[i]});
  }
  for (const auto& [t, w] : tw) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < nphi; ++j) {
      const double ph = (j + 0.5) * 2.0 * kPi / nphi;
      Vec v(3);
      v << s * std::cos(ph), s * std::sin(ph), t;
      rule.dirs.push_back(v);
      rule.weights.push_back(w * 2.0 * kPi / nphi);
    }
  }
  return rule;
}

class AngularCache {
 public:
  AngularCache(int dim, double scale, double length) : dim_(dim), scale_(scale), length_(length) {}

  // Resolution grows with r/L so that f(x + rθ) is resolved on the sphere.
  const AngularRule& at(double r) {
    int order = 1;
    if (dim_ > 1) {
      const double want = scale_ * (16.0 + 2.0 * r / length_);
      const int cap = dim_ == 2 ? 8192 : 256;
      order = std::min(cap, 8 * static_cast<int>(std::ceil(want / 8.0)));
    }
    auto it = rules_.find(order);
    if (it == rules_.end()) it = rules_.emplace(order, make_angular_rule(dim_, order)).first;
    return it->second;
  }

 private:
  int dim_;
  double scale_;
  double length_;
  std::map<int, AngularRule> rules_;
};

std::vector<double> geometric_breaks(double a, double b, double factor) {
  std::vector<double> out{a};
  for (double r = a * factor; r < b / 1.0001; r *= factor) out.push_back(r);
  out.push_back(b);
  return out;
}

struct ZoneResult {
  GeneratorValue value;
  bool converged = true;
};

ZoneResult integrate_zones(const RadialKernel& kernel, const SmoothFunction& f, const Vec& x, const ApplyConfig& cfg,
                           double angular_scale, int max_segments) {
  ZoneResult out;
  const int d = kernel.dim();
  const double omega = sphere_area(d);
  const double fx = f.value(x);
  const Vec gx = f.gradient(x);
  double w_total = 0.0, a_min = 2.0;
  for (const auto& t : kernel.terms()) {
    w_total += t.weight_bound / t.exponent;
    a_min = std::min(a_min, t.exponent);
  }
  const double scale = f.sup_norm() * omega * w_total;
  if (scale == 0.0) return out;
  const double tol_abs = 1e-2 * cfg.tolerance * scale;
  const quad::Tolerance tol{tol_abs, cfg.tolerance};

  double r_max = cfg.r_max;
  if (r_max <= 0.0) r_max = std::pow(20.0 * f.sup_norm() * omega * w_total / tol_abs, 1.0 / a_min);
  r_max = std::clamp(r_max, 2.0, 1e30);
  out.value.r_max = r_max;

  AngularCache rules(d, angular_scale, f.length_scale());
  // The τ-rule resolves the Hessian only over a fraction of the length scale of f.
  const double delta = std::min(cfg.delta, 0.25 * f.length_scale());
  out.value.delta = delta;

  // |h| ≤ δ: second-order Taylor remainder, integrand ~ |h|^{2-d-α}.
  const auto& tau = quad::gauss_legendre(cfg.tau_order);
  std::vector<std::pair<double, double>> tau_nodes;
  for (std::size_t i = 0; i < tau.nodes.size(); ++i) {
    tau_nodes.push_back({0.5 * (1.0 + tau.nodes[i]), 0.5 * tau.weights[i]});
    if (tau.nodes[i] != 0.0) tau_nodes.push_back({0.5 * (1.0 - tau.nodes[i]), 0.5 * tau.weights[i]});
  }
  auto inner = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double k = kernel.times_power(r, cfg.keep_compensator ? d + 1 : d);
    if (k == 0.0) return 0.0;
    const auto& rule = rules.at(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
      const Vec& th = rule.dirs[i];
      double acc = 0.0;
      for (const auto& [t, w] : tau_nodes) {
        if (cfg.keep_compensator) {
          acc += w * (1.0 - t) * th.dot(f.hessian(x + (t * r) * th) * th);
        } else {
          acc += w * f.gradient(x + (t * r) * th).dot(th);
        }
      }
      sum += rule.weights[i] * acc;
    }
    return k * sum;
  };
  // r = δ t^m with m = 1/(1+β) for an integrand ~ r^β removes the endpoint singularity.
  double a_max = 0.0;
  for (const auto& t : kernel.terms()) a_max = std::max(a_max, t.exponent);
  const double beta = cfg.keep_compensator ? 1.0 - a_max : -a_max;
  const double m = std::max(1.0, 1.0 / (1.0 + beta));
  auto inner_t = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double tm = std::pow(t, m - 1.0);
    return inner(delta * tm * t) * m * delta * tm;
  };
  auto in = quad::tanh_sinh(inner_t, 0.0, 1.0, tol, 9);
  if (!in.converged) {
    auto breaks = geometric_breaks(1e-6, 1.0, 4.0);
    breaks.insert(breaks.begin(), 0.0);
    in = quad::gauss_kronrod(inner_t, breaks, tol, max_segments);
  }
  out.converged &= in.converged;
  out.value.inner = in.value;

  auto angular_sum = [&](double r) {
    const auto& rule = rules.at(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.dirs.size(); ++i) sum += rule.weights[i] * f.value(x + r * rule.dirs[i]);
    return sum;
  };

  // δ < |h| ≤ 1: compensated integrand.
  auto middle = [&](double r) {
    const double k = kernel(r);
    if (k == 0.0) return 0.0;
    const auto& rule = rules.at(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
      const Vec& th = rule.dirs[i];
      double diff = f.value(x + r * th) - fx;
      if (cfg.keep_compensator) diff -= r * gx.dot(th);
      sum += rule.weights[i] * diff;
    }
    return k * std::pow(r, d - 1) * sum;
  };
  const auto mid_breaks = geometric_breaks(delta, 1.0, 2.0);
  auto mid = quad::gauss_kronrod(middle, mid_breaks, tol, max_segments);
  out.converged &= mid.converged;
  out.value.middle = mid.value;

  // 1 < |h| ≤ R: f(x+h) against the kernel, and -f(x) times the kernel mass.
  auto outer_f = [&](double r) {
    const double k = kernel(r);
    return k == 0.0 ? 0.0 : k * std::pow(r, d - 1) * angular_sum(r);
  };
  double outer_value = 0.0;
  const double reach = std::min(r_max, f.support_reach(x));
  const double nu = f.frequency();
  if (nu > 0.0 && !std::isfinite(f.support_reach(x))) {
    // Panels of half a period, partial sums accelerated by repeated averaging.
    constexpr int kStart = 16, kDepth = 14;
    const double half = kPi / nu;
    std::vector<double> partial{0.0};
    double lo = 1.0;
    bool done = false;
    for (int k = 0; k < 200000 && !done; ++k) {
      const double hi = std::min(lo + half, r_max);
      auto p = quad::gauss_kronrod(outer_f, lo, hi, tol, 200);
      out.converged &= p.converged;
      partial.push_back(partial.back() + p.value);
      lo = hi;
      if (lo >= r_max) {
        outer_value = partial.back();
        done = true;
      } else if (static_cast<int>(partial.size()) > kStart + kDepth) {
        const double e1 = quad::euler_average(partial, partial.size(), kDepth);
        const double e2 = quad::euler_average(partial, partial.size() - 1, kDepth);
        if (std::abs(e1 - e2) <= 0.1 * tol_abs) {
          outer_value = e1;
          done = true;
        }
      }
    }
    if (!done) out.converged = false;
  } else if (reach > 1.0) {
    const auto breaks = geometric_breaks(1.0, reach, std::pow(10.0, 0.25));
    auto o = quad::gauss_kronrod(outer_f, breaks, tol, max_segments);
    out.converged &= o.converged;
    outer_value = o.value;
  }
  double mass = 0.0;
  if (fx != 0.0) {
    auto kr = [&](double r) { return kernel(r) * std::pow(r, d - 1); };
    const auto breaks = geometric_breaks(1.0, r_max, std::pow(10.0, 0.5));
    auto m = quad::gauss_kronrod(kr, breaks, {0.1 * tol_abs / (omega * std::abs(fx)), 1e-13}, max_segments);
    out.converged &= m.converged;
    mass = omega * m.value;
    out.value.tail = -fx * kernel.tail_mass(r_max);
  }
  out.value.outer = outer_value - fx * mass;
  out.value.value = out.value.inner + out.value.middle + out.value.outer + out.value.tail;
  return out;
}

}  // namespace

GeneratorValue apply(const RadialKernel& kernel, const SmoothFunction& f, const Vec& x, const ApplyConfig& config) {
  if (f.dim() != kernel.dim() || x.size() != kernel.dim()) throw InvalidArgument("generator: dimension mismatch");
  if (!(config.delta > 0.0 && config.delta < 1.0)) throw InvalidArgument("generator: delta must lie in (0, 1)");
  if (config.r_max != 0.0 && !(config.r_max > 1.0)) throw InvalidArgument("generator: r_max must exceed 1");
  if (!config.keep_compensator) {
    for (const auto& t : kernel.terms()) {
      if (t.exponent >= 1.0) throw InvalidArgument("generator: the compensator can be dropped only when alpha < 1");
    }
  }
  if (kernel.vanishes()) return {};
  auto first = integrate_zones(kernel, f, x, config, config.angular_scale, 2000);
  if (first.converged) return first.value;
  auto second = integrate_zones(kernel, f, x, config, 2.0 * config.angular_scale, 20000);
  if (second.converged) return second.value;
  throw ConvergenceError("generator: quadrature did not converge after refinement", first.value.value,
                         second.value.value);
}

// ---------------------------------------------------------------------------------------------
// Model kernels

RadialKernel JumpKernelSpec::at(const Vec& x) const {
  if (!model) throw InvalidArgument("kernel spec: missing model");
  const int d = model->dim();
  const auto& m = *model;
  switch (variant) {
    case KernelVariant::kFull: {
      const double a = m.alpha(x);
      const double xi = m.xi(x);
      const Vec xc = x;
      auto model_ref = model;
      return RadialKernel(d, {{[model_ref, xc, xi](double r) { return model_ref->n(xc, xi, r); }, a,
                               m.bounds().c_upper}});
    }
    case KernelVariant::kFrozen:
      if (z.size() != d) throw InvalidArgument("kernel spec: frozen variant needs z");
      return RadialKernel::stable(d, m.alpha(z), m.xi(z));
    case KernelVariant::kMixed:
      if (z.size() != d || y.size() != d) throw InvalidArgument("kernel spec: mixed variant needs z and y");
      return RadialKernel::stable(d, m.alpha(z), m.xi(y));
  }
  throw InvalidArgument("kernel spec: unknown variant");
}

double JumpKernelSpec::density(const Vec& x, const Vec& h) const { return at(x)(h.norm()); }

KernelVariant parse_variant(const std::string& name) {
  if (name == "full" || name == "L") return KernelVariant::kFull;
  if (name == "frozen" || name == "M") return KernelVariant::kFrozen;
  if (name == "mixed" || name == "Mxy") return KernelVariant::kMixed;
  throw InvalidArgument("unknown kernel variant '" + name + "'");
}

std::string variant_name(KernelVariant v) {
  switch (v) {
    case KernelVariant::kFull:
      return "full";
    case KernelVariant::kFrozen:
      return "frozen";
    case KernelVariant::kMixed:
      return "mixed";
  }
  return "?";
}

GeneratorValue apply(const JumpKernelSpec& spec, const SmoothFunction& f, const Vec& x) {
  return apply(spec.at(x), f, x, spec.config);
}

// ---------------------------------------------------------------------------------------------
// Characteristic exponent

namespace {

// 1 - (sphere average of cos(r θ₁)); the average is Γ(d/2)(2/r)^{d/2-1}J_{d/2-1}(r).
double one_minus_average(int dim, double r) {
  const double h = 0.5 * dim;
  if (r < 1.0) {
    const double q = 0.25 * r * r;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      term *= -q / (k * (k - 1 + h));
      sum -= term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 1.0 - gamma_fn(h) * std::pow(2.0, h - 1.0) * bessel_lambda(h - 1.0, r);
}

double compute_characteristic_constant(int dim, double alpha) {
  // ∫_0^1 termwise from the power series of 1 - average.
  const double hd = 0.5 * dim;
  double head = 0.0, c = 1.0;
  for (int k = 1; k < 60; ++k) {
    c *= -0.25 / (k * (k - 1 + hd));
    const double term = -c / (2.0 * k - alpha);
    head += term;
    if (std::abs(term) < 1e-18 * std::abs(head)) break;
  }
  auto avg = [&](double r) { return std::pow(r, -1.0 - alpha) * (1.0 - one_minus_average(dim, r)); };
  constexpr int kStart = 16, kDepth = 14;
  std::vector<double> partial{0.0};
  double lo = 1.0;
  for (int k = 0; k < 100000; ++k) {
    const double hi = lo + kPi;
    auto p = quad::gauss_kronrod(avg, lo, hi, {1e-17, 1e-14}, 200);
    partial.push_back(partial.back() + p.value);
    lo = hi;
    if (static_cast<int>(partial.size()) > kStart + kDepth) {
      const double e1 = quad::euler_average(partial, partial.size(), kDepth);
      const double e2 = quad::euler_average(partial, partial.size() - 1, kDepth);
      if (std::abs(e1 - e2) <= 1e-15) return sphere_area(dim) * (head + 1.0 / alpha - e1);
    }
  }
  throw ConvergenceError("characteristic exponent: oscillatory tail did not converge", partial[partial.size() - 2],
                         partial.back());
}

}  // namespace

double characteristic_constant(int dim, double alpha) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("characteristic exponent: dimension must be 1..3");
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("characteristic exponent: alpha must lie in (0, 2)");
  static std::mutex mu;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({dim, alpha});
    if (it != cache.end()) return it->second;
  }
  const double k = compute_characteristic_constant(dim, alpha);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(dim, alpha), k);
  return k;
}

double characteristic_exponent(const Vec& u, double alpha, double weight) {
  const double norm = u.norm();
  if (norm == 0.0) return 0.0;
  return weight * characteristic_constant(static_cast<int>(u.size()), alpha) * std::pow(norm, alpha);
}

double calibrate_reference_constant(int dim, double alpha) { return 1.0 / characteristic_constant(dim, alpha); }

// ---------------------------------------------------------------------------------------------
// Operator differences

DifferenceKind parse_difference(const std::string& name) {
  if (name == "L_minus_Mx") return DifferenceKind::kLMinusMx;
  if (name == "Mx_minus_Mxy") return DifferenceKind::kMxMinusMxy;
  if (name == "Mxy_minus_My") return DifferenceKind::kMxyMinusMy;
  throw InvalidArgument("unknown operator difference '" + name + "'");
}

std::string difference_name(DifferenceKind kind) {
  switch (kind) {
    case DifferenceKind::kLMinusMx:
      return "L_minus_Mx";
    case DifferenceKind::kMxMinusMxy:
      return "Mx_minus_Mxy";
    case DifferenceKind::kMxyMinusMy:
      return "Mxy_minus_My";
  }
  return "?";
}

RadialKernel difference_kernel(DifferenceKind kind, const VariableOrderModel& model, const Vec& x, const Vec& y) {
  const int d = model.dim();
  const double ax = model.alpha(x), ay = model.alpha(y);
  const double xx = model.xi(x), xy = model.xi(y);
  switch (kind) {
    case DifferenceKind::kLMinusMx: {
      const Vec xc = x;
      const VariableOrderModel* m = &model;
      const Range wr = model.weight().range({xx, xx});
      const double bound = std::max(std::abs(wr.hi - xx), std::abs(wr.lo - xx));
      const bool same = model.weight().matches_xi();
      return RadialKernel(d, {{[m, xc, xx](double r) { return m->n(xc, xx, r) - xx; }, ax, same ? 0.0 : bound}});
    }
    case DifferenceKind::kMxMinusMxy:
      return RadialKernel::stable(d, ax, xx - xy);
    case DifferenceKind::kMxyMinusMy:
      if (ax == ay) return RadialKernel::stable(d, ax, 0.0);
      return RadialKernel(d, {{[xy](double) { return xy; }, ax, xy}, {[xy](double) { return -xy; }, ay, xy}});
  }
  throw InvalidArgument("unknown operator difference");
}

double operator_difference(DifferenceKind kind, const VariableOrderModel& model, const SmoothFunction& r,
                           const Vec& x, const Vec& y, const Vec& u, const ApplyConfig& config) {
  if (u.norm() == 0.0) throw DomainError("operator difference: u must be nonzero");
  return apply(difference_kernel(kind, model, x, y), r, u, config).value;
}

}  // namespace stablelike
