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

#include "resolvent/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/quadrature.hpp"
#include "special/special_functions.hpp"

namespace stablelike {

namespace {

constexpr double kCut = 45.0;  // e^{-45} ~ 3e-20

// Fixed point of c·e^V = kCut + g·V.
double exponential_cutoff(double c, double g) {
  double v = std::log(kCut / c);
  for (int i = 0; i < 8; ++i) v = std::log((kCut + std::max(0.0, g * v)) / c);
  return std::max(v, 0.0);
}

}  // namespace

ResolventKernel::ResolventKernel(std::shared_ptr<const DensityEvaluator> density, const ResolventConfig& config)
    : dim_(density->dim()),
      alpha_(density->alpha()),
      config_(config),
      density_(std::move(density)),
      table_(density_->profile()) {
  if (!(config_.s_min > 0.0 && config_.s_max > config_.s_min) || config_.panels_per_decade < 1 ||
      config_.nodes < 4) {
    throw InvalidArgument("resolvent: invalid table configuration");
  }
  ln_lo_ = std::log(config_.s_min);
  ln_hi_ = std::log(config_.s_max);
  const int decades = static_cast<int>(std::ceil(std::log10(config_.s_max / config_.s_min) - 1e-9));
  const int panels = decades * config_.panels_per_decade;
  const double width = (ln_hi_ - ln_lo_) / panels;
  std::vector<ChebyshevPanel> built;
  built.reserve(panels);
  for (int i = 0; i < panels; ++i) {
    const double a = ln_lo_ + i * width;
    const double b = (i + 1 == panels) ? ln_hi_ : a + width;
    built.emplace_back([this](double v) { return std::log(direct_unit(std::exp(v))); }, a, b, config_.nodes);
  }
  log_profile_ = PiecewiseChebyshev(std::move(built));
  slope_lo_ = log_profile_.derivative(ln_lo_);
  slope_hi_ = log_profile_.derivative(ln_hi_);
}

ResolventKernel::ResolventKernel(int dim, double alpha, const ResolventConfig& config)
    : ResolventKernel(std::make_shared<DensityEvaluator>(dim, alpha), config) {}

double ResolventKernel::direct_unit(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("resolvent: radius must be positive and finite");
  const double c = std::pow(s, alpha_);
  const double da = dim_ / alpha_;
  const double g = 1.0 - da;
  const quad::Tolerance tol{0.0, config_.tolerance};

  // u in (0, 1]: radius u^{-1/α} ≥ 1, integrand ~ a_1 u near 0.
  auto f1 = [&](double u) {
    if (u <= 0.0) return 0.0;
    return std::exp(-c * u) * std::pow(u, -da) * table_(std::pow(u, -1.0 / alpha_));
  };
  std::vector<double> breaks{0.0};
  for (double k = 1.0; k / c < 1.0; k *= 2.0) breaks.push_back(k / c);
  breaks.push_back(1.0);
  auto r1 = quad::gauss_kronrod(f1, breaks, tol, 4000);

  // u = e^v, v in [0, V]: radius e^{-v/α} ≤ 1.
  auto f2 = [&](double v) { return std::exp(-c * std::exp(v) + g * v) * table_(std::exp(-v / alpha_)); };
  double v_end = exponential_cutoff(c, g);
  if (g < 0.0) v_end = std::min(v_end, kCut / -g);
  quad::Result r2;
  r2.converged = true;
  if (v_end > 0.0) {
    std::vector<double> vb{0.0};
    const int n = std::max(1, static_cast<int>(std::ceil(v_end)));
    for (int i = 1; i <= n; ++i) vb.push_back(v_end * i / n);
    r2 = quad::gauss_kronrod(f2, vb, tol, 4000);
  }
  if (!r1.converged || !r2.converged) {
    throw ConvergenceError("resolvent: time quadrature did not converge", r1.value, r1.value + r2.value);
  }
  return std::pow(s, alpha_ - dim_) * (r1.value + r2.value);
}

double ResolventKernel::unit(double s) const {
  if (!(s > 0.0)) throw DomainError("resolvent: radius must be positive");
  const double v = std::log(s);
  if (v >= ln_lo_ && v <= ln_hi_) return std::exp(log_profile_(v));
  if (v < ln_lo_) {
    const double edge = std::exp(log_profile_(ln_lo_));
    if (dim_ < alpha_) {
      // Finite at the origin: r^1(0) - r^1(s) ~ c s^{α-d}.
      const double origin = at_origin(1.0);
      return origin - (origin - edge) * std::exp((alpha_ - dim_) * (v - ln_lo_));
    }
    return edge * std::exp(slope_lo_ * (v - ln_lo_));
  }
  // r^1(s) ~ Σ a_k k! s^{-d-kα}, asymptotic; truncated at its smallest term.
  const auto& a = density_->profile().coefficients();
  const double w = std::pow(s, -alpha_);
  double sum = 0.0, term_prev = std::numeric_limits<double>::infinity(), fact = 1.0, wk = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    fact *= k;
    wk *= w;
    const double term = a[k] * fact * wk;
    if (term != 0.0 && std::abs(term) > term_prev) break;
    sum += term;
    if (term != 0.0) term_prev = std::abs(term);
  }
  return std::pow(s, -static_cast<double>(dim_)) * sum;
}

double ResolventKernel::direct(double lambda, double r) const {
  if (!(lambda > 0.0)) throw InvalidArgument("resolvent: lambda must be positive");
  if (r == 0.0) return at_origin(lambda);
  return std::pow(lambda, dim_ / alpha_ - 1.0) * direct_unit(std::pow(lambda, 1.0 / alpha_) * std::abs(r));
}

double ResolventKernel::value(double lambda, double r) const {
  if (!(lambda > 0.0)) throw InvalidArgument("resolvent: lambda must be positive");
  if (r == 0.0) return at_origin(lambda);
  return std::pow(lambda, dim_ / alpha_ - 1.0) * unit(std::pow(lambda, 1.0 / alpha_) * std::abs(r));
}

double ResolventKernel::value(double lambda, const Vec& x) const {
  if (x.size() != dim_) throw InvalidArgument("resolvent: point dimension mismatch");
  return value(lambda, x.norm());
}

double ResolventKernel::at_origin(double lambda) const {
  if (dim_ >= alpha_) throw PoleError("resolvent: kernel diverges at the origin when d >= alpha");
  return density_->profile().at_origin() * gamma_fn(1.0 - dim_ / alpha_) * std::pow(lambda, dim_ / alpha_ - 1.0);
}

double ResolventKernel::total_mass(double lambda) const {
  // ∫ r^λ = λ^{-1} ∫ r^1, so only the unit profile is integrated (in ln s).
  const quad::Tolerance tol{0.0, 1e-12};
  auto f = [&](double v) { return std::exp(log_profile_(v) + dim_ * v); };
  std::vector<double> breaks;
  for (double v = ln_lo_; v < ln_hi_; v += std::log(10.0) / config_.panels_per_decade) breaks.push_back(v);
  breaks.push_back(ln_hi_);
  auto body = quad::gauss_kronrod(f, breaks, tol, 4000);
  // Power-law end pieces: local slope at the lower end, asymptotic series at the upper end.
  const double lower = std::exp(log_profile_(ln_lo_) + dim_ * ln_lo_) / (dim_ + slope_lo_);
  const auto& a = density_->profile().coefficients();
  const double w = std::pow(config_.s_max, -alpha_);
  double upper = 0.0, fact = 1.0, wk = 1.0;
  for (int k = 1; k <= std::min(a.order(), 8); ++k) {
    fact *= k;
    wk *= w;
    upper += a[k] * fact * wk / (k * alpha_);
  }
  return sphere_area(dim_) * (body.value + lower + upper) / lambda;
}

// ---------------------------------------------------------------------------------------------

Mollifier::Mollifier(int dim, double eps) : dim_(dim), eps_(eps) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("mollifier: dimension must be 1..3");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("mollifier: eps must be positive");
  auto bump = [dim](double r) {
    const double u = 1.0 - 4.0 * r * r;
    return u > 1e-3 ? std::exp(-1.0 / u) * std::pow(r, dim - 1) : 0.0;
  };
  const double breaks[] = {0.0, 0.25, 0.4, 0.5};
  auto res = quad::gauss_kronrod(bump, std::span<const double>(breaks), {0.0, 1e-15}, 400);
  z_ = sphere_area(dim) * res.value;
}

double Mollifier::operator()(double q) const {
  const double x = std::abs(q) / eps_;
  const double u = 1.0 - 4.0 * x * x;
  if (u <= 1e-3) return 0.0;
  return std::exp(-1.0 / u) / (z_ * std::pow(eps_, dim_));
}

double Mollifier::g1(double q) const {
  const double x = std::abs(q) / eps_;
  const double u = 1.0 - 4.0 * x * x;
  if (u <= 1e-3) return 0.0;
  const double phi = std::exp(-1.0 / u) / z_;
  return -8.0 * phi / (u * u) * std::pow(eps_, -dim_ - 2);
}

double Mollifier::g2(double q) const {
  const double x = std::abs(q) / eps_;
  const double u = 1.0 - 4.0 * x * x;
  if (u <= 1e-3) return 0.0;
  const double phi = std::exp(-1.0 / u) / z_;
  const double u3 = u * u * u;
  return phi * (64.0 / (u3 * u) - 128.0 / u3) * std::pow(eps_, -dim_ - 4);
}

double Mollifier::integral() const {
  auto f = [&](double r) { return (*this)(r) * std::pow(r, dim_ - 1); };
  const double breaks[] = {0.0, 0.25 * eps_, 0.4 * eps_, 0.5 * eps_};
  return sphere_area(dim_) * quad::gauss_kronrod(f, std::span<const double>(breaks), {0.0, 1e-15}, 400).value;
}

// ---------------------------------------------------------------------------------------------

MollifiedResolvent::MollifiedResolvent(std::shared_ptr<const ResolventKernel> kernel, double lambda, double eps,
                                       double xi_y)
    : kernel_(std::move(kernel)), lambda_(lambda), xi_(xi_y), mollifier_(kernel_->dim(), eps) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw InvalidArgument("mollified resolvent: lambda must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("mollified resolvent: eps must lie in (0, 1]");
  if (!(xi_y > 0.0) || !std::isfinite(xi_y)) throw InvalidArgument("mollified resolvent: xi(y) must be positive");
  kappa_ = xi_y / fractional_laplacian_constant(kernel_->dim(), kernel_->alpha());
  mu_ = lambda_ / kappa_;
  prefactor_ = 1.0 / kappa_;
  sup_ = integrate(0.0, 0);
}

double MollifiedResolvent::kernel_value(double r) const { return prefactor_ * kernel_->value(mu_, r); }

namespace {

// Integrates f on [0, b] with f ~ w^{1/m - 1} at 0: w = b t^m makes the integrand bounded.
// Refines once before failing.
template <class F>
double singular_at_left(F&& f, double b, double m, const char* what) {
  const quad::Tolerance tol{0.0, 1e-10};
  auto g = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double tm = std::pow(t, m - 1.0);
    return f(b * tm * t) * m * b * tm;
  };
  auto ts = quad::tanh_sinh(g, 0.0, 1.0, tol, 9);
  if (ts.converged) return ts.value;
  std::vector<double> breaks{0.0};
  for (double k = 1e-12; k < 1.0; k *= 4.0) breaks.push_back(k);
  breaks.push_back(1.0);
  auto gk = quad::gauss_kronrod(g, breaks, tol, 20000);
  if (gk.converged) return gk.value;
  throw ConvergenceError(what, ts.value, gk.value);
}

// `floor` is an absolute target tied to the integrand size; it only matters far from the
// origin, where derivative integrals are dominated by cancellation.
template <class F>
double regular(F&& f, double a, double b, double floor, const char* what) {
  const quad::Tolerance tol{floor, 1e-10};
  const double breaks[] = {a, a + 0.25 * (b - a), a + 0.5 * (b - a), a + 0.75 * (b - a), b};
  auto gk = quad::gauss_kronrod(f, std::span<const double>(breaks), tol, 4000);
  if (gk.converged) return gk.value;
  std::vector<double> fine{a};
  for (int i = 1; i <= 32; ++i) fine.push_back(a + (b - a) * i / 32.0);
  auto again = quad::gauss_kronrod(f, fine, tol, 20000);
  if (again.converged) return again.value;
  throw ConvergenceError(what, gk.value, again.value);
}

}  // namespace

double MollifiedResolvent::cancellation_floor(double rho, int which) const {
  if (rho <= 0.0) return 0.0;
  return 1e-14 * kernel_value(rho) * std::pow(eps(), -which) * 100.0;
}

double MollifiedResolvent::integrate(double s, int which) const {
  const int d = dim();
  const double half = mollifier_.support();
  const char* what = "mollified resolvent: quadrature over the mollifier support did not converge";
  const Mollifier& m = mollifier_;
  // r(w)|w|^{d-1} ~ |w|^{α-1} at the origin.
  const double mexp = std::max(1.0, 1.0 / alpha());

  if (d == 1) {
    // ∫ r(|w|) D(s - w) dw over w in (s - ε/2, s + ε/2), D = φ_ε, φ_ε', φ_ε''.
    auto f = [&](double w) {
      const double z = s - w;
      const double dz = which == 0 ? m(z) : which == 1 ? m.d1(z) : m.d2(z);
      return dz == 0.0 ? 0.0 : kernel_value(w) * dz;
    };
    const double lo = s - half, hi = s + half;
    if (lo < 0.0 && hi > 0.0) {
      auto left = [&](double t) { return f(-t); };
      return singular_at_left(left, -lo, mexp, what) + singular_at_left(f, hi, mexp, what);
    }
    return regular(f, lo, hi, cancellation_floor(std::max(lo, 0.0), which), what);
  }

  // Angular factor around the singularity: A(ρ) = ∫_{S^{d-1}} F(q, s - ρθ₁) dθ.
  auto integrand = [&](double q, double along) {
    switch (which) {
      case 0:
        return m(q);
      case 1:
        return m.g1(q) * along;
      default:
        return m.g1(q) + m.g2(q) * along * along;
    }
  };
  const quad::Tolerance inner{0.0, 1e-12};
  auto angular = [&](double rho) {
    if (rho == 0.0) return 0.0;
    if (s == 0.0) {
      // Sphere average of (θ₁)^2 is 1/d.
      const double base = which == 0 ? m(rho) : which == 1 ? 0.0 : m.g1(rho) + m.g2(rho) * rho * rho / d;
      return sphere_area(d) * base;
    }
    const double cmin = (s * s + rho * rho - half * half) / (2.0 * s * rho);
    if (cmin >= 1.0) return 0.0;
    if (d == 2) {
      const double tmax = cmin <= -1.0 ? kPi : std::acos(cmin);
      auto g = [&](double th) {
        const double sh = std::sin(0.5 * th);
        const double q = std::sqrt((s - rho) * (s - rho) + 4.0 * s * rho * sh * sh);
        return integrand(q, s - rho * std::cos(th));
      };
      return 2.0 * quad::gauss_kronrod(g, 0.0, tmax, inner, 400).value;
    }
    const double tmin = std::max(-1.0, cmin);
    auto g = [&](double t) {
      const double q = std::sqrt(std::max(0.0, (s - rho) * (s - rho) + 2.0 * s * rho * (1.0 - t)));
      return integrand(q, s - rho * t);
    };
    return 2.0 * kPi * quad::gauss_kronrod(g, tmin, 1.0, inner, 400).value;
  };
  auto f = [&](double rho) {
    const double a = angular(rho);
    return a == 0.0 ? 0.0 : kernel_value(rho) * std::pow(rho, d - 1) * a;
  };
  const double lo = std::max(0.0, s - half), hi = s + half;
  if (lo == 0.0) return singular_at_left(f, hi, mexp, what);
  return regular(f, lo, hi, cancellation_floor(lo, which), what);
}

RadialJet MollifiedResolvent::radial(double s, int order) const {
  if (order < 0 || order > 2) throw InvalidArgument("mollified resolvent: derivative order must be 0..2");
  s = std::abs(s);
  if (dim() == 1 && s >= eps()) {
    // Away from the singularity the integrand is smooth on the whole support: one fixed rule.
    // Composite rule, finer towards the edges where φ_ε'' has its sharp flanks.
    static constexpr double kEdges[] = {0.0, 0.2, 0.32, 0.4, 0.45, 0.48, 0.5};
    const auto& gl = quad::gauss_legendre(24);
    const double e = eps();
    RadialJet jet;
    for (std::size_t p = 0; p + 1 < std::size(kEdges); ++p) {
      const double c = 0.5 * (kEdges[p] + kEdges[p + 1]) * e;
      const double h = 0.5 * (kEdges[p + 1] - kEdges[p]) * e;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        for (double node : {gl.nodes[i], -gl.nodes[i]}) {
          const double z = c + h * node;
          const double mz = mollifier_(z);
          if (mz == 0.0) continue;
          const double d1 = mollifier_.d1(z), d2 = mollifier_.d2(z);
          // ±z: the mollifier is even, its first derivative odd.
          const double wp = gl.weights[i] * h * kernel_value(s - z);
          const double wm = gl.weights[i] * h * kernel_value(s + z);
          jet.value += (wp + wm) * mz;
          jet.first += (wp - wm) * d1;
          jet.second += (wp + wm) * d2;
          if (gl.nodes[i] == 0.0) break;
        }
      }
    }
    if (order < 2) jet.second = 0.0;
    if (order < 1) jet.first = 0.0;
    return jet;
  }
  if (dim() > 1 && s < 1e-12 * eps()) s = 0.0;
  RadialJet jet;
  jet.value = integrate(s, 0);
  if (order >= 1) jet.first = (s == 0.0) ? 0.0 : integrate(s, 1);
  if (order >= 2) jet.second = integrate(s, 2);
  return jet;
}

Vec MollifiedResolvent::gradient(const Vec& x) const {
  if (x.size() != dim()) throw InvalidArgument("mollified resolvent: point dimension mismatch");
  const double s = x.norm();
  Vec g = Vec::Zero(dim());
  if (s == 0.0) return g;
  return integrate(s, 1) / s * x;
}

Mat MollifiedResolvent::hessian(const Vec& x) const {
  if (x.size() != dim()) throw InvalidArgument("mollified resolvent: point dimension mismatch");
  const int d = dim();
  const double s = x.norm();
  Mat h(d, d);
  if (d == 1) {
    h(0, 0) = integrate(s, 2);
    return h;
  }
  if (s < 1e-12 * eps()) {
    const double second = radial(0.0, 2).second;
    h.setIdentity();
    return second * h;
  }
  const double first = integrate(s, 1);
  const double second = integrate(s, 2);
  const Vec e = x / s;
  h = (first / s) * Mat::Identity(d, d);
  h += (second - first / s) * (e * e.transpose());
  return h;
}

// ---------------------------------------------------------------------------------------------

MollifiedTable::MollifiedTable(std::shared_ptr<const MollifiedResolvent> source, int nodes)
    : source_(std::move(source)) {
  const double eps = source_->eps();
  std::vector<double> edges;
  for (int i = 0; i <= 16; ++i) edges.push_back(eps * i / 8.0);
  end_ = 1e4;
  while (edges.back() < end_) edges.push_back(std::min(end_, edges.back() * 1.5));
  const std::size_t n = edges.size() - 1;
  std::vector<ChebyshevPanel> v(n), f(n), s(n);
  parallel_for(n, [&](std::size_t i) {
    const auto pts = ChebyshevPanel::nodes(edges[i], edges[i + 1], nodes);
    std::vector<double> a, b, c;
    for (double x : pts) {
      const auto jet = source_->radial(x, 2);
      a.push_back(jet.value);
      b.push_back(jet.first);
      c.push_back(jet.second);
    }
    v[i] = ChebyshevPanel::from_values(a, edges[i], edges[i + 1]);
    f[i] = ChebyshevPanel::from_values(b, edges[i], edges[i + 1]);
    s[i] = ChebyshevPanel::from_values(c, edges[i], edges[i + 1]);
  });
  value_ = PiecewiseChebyshev(std::move(v));
  first_ = PiecewiseChebyshev(std::move(f));
  second_ = PiecewiseChebyshev(std::move(s));
}

RadialJet MollifiedTable::radial(double s) const {
  s = std::abs(s);
  if (s <= end_) return {value_(s), first_(s), second_(s)};
  // Log-spaced central differences of the unmollified kernel; the mollifier is negligible here.
  constexpr double h = 1e-3;
  const double r = source_->kernel_value(s);
  const double up = source_->kernel_value(s * (1.0 + h));
  const double dn = source_->kernel_value(s * (1.0 - h));
  return {r, (up - dn) / (2.0 * h * s), (up - 2.0 * r + dn) / (h * h * s * s)};
}

double MollifiedTable::value(const Vec& x) const {
  const double s = x.norm();
  return s <= end_ ? value_(s) : source_->kernel_value(s);
}

Vec MollifiedTable::gradient(const Vec& x) const {
  const double s = x.norm();
  if (s == 0.0) return Vec::Zero(dim());
  return radial(s).first / s * x;
}

Mat MollifiedTable::hessian(const Vec& x) const {
  const int d = dim();
  const double s = x.norm();
  const auto jet = radial(s);
  if (d == 1) {
    Mat h(1, 1);
    h(0, 0) = jet.second;
    return h;
  }
  if (s < 1e-12 * source_->eps()) return jet.second * Mat::Identity(d, d);
  const Vec e = x / s;
  Mat h = (jet.first / s) * Mat::Identity(d, d);
  h += (jet.second - jet.first / s) * (e * e.transpose());
  return h;
}

// ---------------------------------------------------------------------------------------------

Json BoundWitness::to_json() const {
  Json points = Json::array();
  for (std::size_t i = 0; i < radii.size(); ++i) points.push_back({{"r", radii[i]}, {"lhs", lhs[i]}, {"rhs", rhs[i]}});
  return {{"bound_id", bound_id},
          {"fitted_constant", fitted_constant},
          {"refined_constant", refined_constant},
          {"pass", pass},
          {"points", points}};
}

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace

BoundWitness fit_bound(const std::string& id, const std::function<double(double)>& lhs,
                       const std::function<double(double)>& rhs, double r_min, double r_max, int points,
                       double stability) {
  if (!(r_min > 0.0 && r_max > r_min) || points < 2) throw InvalidArgument("bound witness: invalid grid");
  BoundWitness w;
  w.bound_id = id;
  w.radii = log_grid(r_min, r_max, points);
  auto sup_ratio = [&](const std::vector<double>& radii, std::vector<double>* l, std::vector<double>* r) {
    double sup = 0.0;
    for (double x : radii) {
      const double a = std::abs(lhs(x));
      const double b = rhs(x);
      if (l) l->push_back(a);
      if (r) r->push_back(b);
      if (b > 0.0 && std::isfinite(b)) sup = std::max(sup, a / b);
    }
    return sup;
  };
  w.fitted_constant = sup_ratio(w.radii, &w.lhs, &w.rhs);
  // The refined grid interleaves midpoints; the coarse points are reused.
  std::vector<double> mids;
  for (int i = 0; i + 1 < points; ++i) mids.push_back(std::sqrt(w.radii[i] * w.radii[i + 1]));
  w.refined_constant = std::max(w.fitted_constant, sup_ratio(mids, nullptr, nullptr));
  const bool finite = std::isfinite(w.fitted_constant) && std::isfinite(w.refined_constant);
  if (w.fitted_constant == 0.0) {
    w.pass = finite && w.refined_constant == 0.0;
  } else {
    w.pass = finite && std::abs(w.refined_constant - w.fitted_constant) < stability * w.fitted_constant;
  }
  return w;
}

std::vector<BoundWitness> verify_resolvent_bounds(const MollifiedResolvent& mr, double r_min, double r_max,
                                                  int points) {
  const int d = mr.dim();
  const double a = mr.alpha();
  const double lambda = mr.lambda();
  auto shape = [=](double r, int k) {
    return std::min(1.0, std::pow(r, -2.0 * a) / lambda) * std::pow(r, -d + a - k);
  };
  std::vector<BoundWitness> out;
  out.push_back(fit_bound(
      "resolvent_value", [&](double r) { return mr.radial(r, 0).value; }, [&](double r) { return shape(r, 0); },
      r_min, r_max, points));
  out.push_back(fit_bound(
      "resolvent_gradient_sum", [&](double r) { return std::abs(mr.radial(r, 1).first); },
      [&](double r) { return shape(r, 1); }, r_min, r_max, points));
  out.push_back(fit_bound(
      "resolvent_hessian_sum",
      [&](double r) {
        const auto jet = mr.radial(r, 2);
        return std::abs(jet.second) + (d - 1) * std::abs(jet.first) / r;
      },
      [&](double r) { return shape(r, 2); }, r_min, r_max, points));
  return out;
}

}  // namespace stablelike
