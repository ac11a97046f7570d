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

#include "density/stable_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "common/error.hpp"
#include "common/quadrature.hpp"

namespace stablelike {
namespace {

constexpr int kAccelerationStart = 16;
constexpr int kAveragingDepth = 14;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in the open interval (0, 2)");
}

}  // namespace

double density_at_origin(double t, int dim, double alpha) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("time must be positive");
  const double d = dim;
  const double log_val = -d * std::log(2.0 * kPi) + std::log(sphere_area(dim)) + log_gamma(d / alpha) - std::log(alpha);
  return std::pow(t, -d / alpha) * std::exp(log_val);
}

RadialProfile::RadialProfile(int dim, double alpha, const DensityConfig& config)
    : dim_(dim), alpha_(alpha), config_(config) {
  check_alpha(alpha);
  if (dim < 1 || dim > 9) throw InvalidArgument("profile dimension must lie in 1..9");
  coeffs_ = series_coefficients(dim, alpha, config.k_max + 4);
  origin_ = density_at_origin(1.0, dim, alpha);
  crossover_ = choose_crossover();
  if (std::isfinite(crossover_)) {
    const int n = series_sum(crossover_).terms;
    tail_poly_.assign(coeffs_.a.begin(), coeffs_.a.begin() + n);
  }
}

double RadialProfile::tail(double s) const {
  const double w = std::pow(s, -alpha_);
  double acc = 0.0;
  for (std::size_t k = tail_poly_.size(); k-- > 0;) acc = acc * w + tail_poly_[k];
  return acc * w * std::pow(s, -static_cast<double>(dim_));
}

SeriesValue RadialProfile::series_sum(double s) const {
  // Truncation follows the sine-free envelope of the terms; an accidentally small a_k
  // (kα near an even integer) must not end the sum early.
  SeriesValue out;
  const double log_s = std::log(s);
  double previous = std::numeric_limits<double>::infinity();
  const int k_max = config_.k_max;
  for (int k = 1; k <= coeffs_.order(); ++k) {
    const double scale = std::exp(-(dim_ + k * alpha_) * log_s);
    const double env = coeffs_.bound(k) * scale;
    if (k > k_max || env > previous) {
      out.bound = env;
      return out;
    }
    out.value += coeffs_[k] * scale;
    out.terms = k;
    previous = env;
  }
  out.bound = previous;
  return out;
}

double RadialProfile::inversion(double s) const {
  if (!std::isfinite(s) || s < 0.0) throw DomainError("inversion radius must be finite and nonnegative");
  if (s == 0.0) return origin_;
  const double D = dim_;
  const double nu = 0.5 * D - 1.0;
  const double prefactor = std::pow(2.0 * kPi, -0.5 * D);
  const double tail_scale = std::abs(coeffs_[1]) * std::pow(s, -(D + alpha_));
  const double abs_target = config_.tolerance * std::min(origin_, tail_scale) / prefactor;

  auto integrand = [&](double r) {
    if (r <= 0.0) return dim_ == 1 ? bessel_lambda(nu, 0.0) : 0.0;
    return std::exp(-std::pow(r, alpha_) + (D - 1.0) * std::log(r)) * bessel_lambda(nu, r * s);
  };

  // Beyond r_cut the envelope e^{-r^α} r^{D} is below 1e-3 of the target.
  const double log_target = std::log(1e-3 * abs_target);
  double r_cut = 1.0;
  for (int i = 0; i < 60; ++i) r_cut = std::pow(std::max(1.0, -log_target + D * std::log(r_cut)), 1.0 / alpha_);

  const quad::Tolerance panel_tol{0.05 * abs_target, 1e-14};
  // Breakpoints at McMahon approximations of the zeros of J_ν(rs).
  const double mu = 4.0 * nu * nu;
  auto zero = [&](int k) {
    const double beta = (k + 0.5 * nu - 0.25) * kPi;
    return (beta - (mu - 1.0) / (8.0 * beta)) / s;
  };
  int k0 = 1;
  while (zero(k0) <= 0.0 || (k0 + 0.5 * nu - 0.25) * kPi < 2.0 * std::max(1.0, nu)) ++k0;

  const double first = zero(k0);
  if (first >= r_cut) {
    std::vector<double> br{0.0};
    for (double r = std::min(1.0, r_cut / 4); r < r_cut; r *= 2.0) br.push_back(r);
    br.push_back(r_cut);
    auto res = quad::gauss_kronrod(integrand, br, {abs_target, 1e-14}, 4000);
    if (!res.converged) throw ConvergenceError("density inversion: non-oscillatory quadrature did not converge", res.value - res.error, res.value);
    return prefactor * res.value;
  }

  std::vector<double> head_breaks{0.0};
  for (double r = std::min(0.25, first / 2); r < first; r *= 2.0) head_breaks.push_back(r);
  head_breaks.push_back(first);
  const auto head = quad::gauss_kronrod(integrand, head_breaks, panel_tol, 4000);
  if (!head.converged) throw ConvergenceError("density inversion: head panel did not converge", head.value - head.error, head.value);

  std::vector<double> partial;
  partial.reserve(256);
  partial.push_back(head.value);
  double lower = first;
  double prev_estimate = std::numeric_limits<double>::quiet_NaN();
  double estimate = head.value;
  for (int k = k0 + 1; k - k0 <= config_.max_panels; ++k) {
    const double upper = zero(k);
    const auto panel = quad::gauss_kronrod(integrand, lower, upper, panel_tol, 400);
    partial.push_back(partial.back() + panel.value);
    lower = upper;
    if (lower >= r_cut) return prefactor * partial.back();
    const int n = static_cast<int>(partial.size());
    if (n >= kAccelerationStart + kAveragingDepth) {
      const double e1 = quad::euler_average(partial, partial.size(), kAveragingDepth);
      const double e2 = quad::euler_average(partial, partial.size() - 1, kAveragingDepth);
      prev_estimate = estimate;
      estimate = e1;
      if (std::abs(e1 - e2) <= 0.1 * abs_target) return prefactor * e1;
    }
  }
  throw ConvergenceError("density inversion: panel limit reached", prefactor * prev_estimate, prefactor * estimate);
}

double RadialProfile::choose_crossover() const {
  const double tol = config_.tolerance;
  for (double m = config_.m_min; m <= config_.m_max + 1e-12; m += config_.m_step) {
    const auto series = series_sum(m);
    if (!(series.bound < tol * std::abs(series.value))) continue;
    double inv;
    try {
      inv = inversion(m);
    } catch (const ConvergenceError&) {
      continue;
    }
    if (std::abs(series.value - inv) <= 10.0 * tol * std::abs(inv)) return m;
  }
  return std::numeric_limits<double>::infinity();
}

DensityEvaluator::DensityEvaluator(int dim, double alpha, const DensityConfig& config)
    : dim_(dim), alpha_(alpha), config_(config) {
  check_alpha(alpha);
  if (dim < 1 || dim > 5) throw InvalidArgument("density dimension must lie in 1..5");
  profiles_[0] = std::make_unique<RadialProfile>(dim, alpha, config);
}

const RadialProfile& DensityEvaluator::shifted_profile(int shift) const {
  if (shift < 0 || shift > 2) throw InvalidArgument("profile shift must be 0, 1 or 2");
  if (shift == 0) return *profiles_[0];
  std::call_once(once_[shift], [&] { profiles_[shift] = std::make_unique<RadialProfile>(dim_ + 2 * shift, alpha_, config_); });
  return *profiles_[shift];
}

void DensityEvaluator::check_point(double t, const Vec& x) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
  if (x.size() != dim_) throw InvalidArgument("point dimension does not match the evaluator");
  if (!x.allFinite()) throw DomainError("point has non-finite coordinates");
}

double DensityEvaluator::density_radial(double t, double r) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
  if (!std::isfinite(r)) throw DomainError("radius must be finite");
  const double scale = std::pow(t, -1.0 / alpha_);
  return std::pow(t, -dim_ / alpha_) * profiles_[0]->value(std::abs(r) * scale);
}

double DensityEvaluator::density(double t, const Vec& x) const {
  check_point(t, x);
  return density_radial(t, x.norm());
}

Vec DensityEvaluator::gradient(double t, const Vec& x) const {
  check_point(t, x);
  const double scale = std::pow(t, -1.0 / alpha_);
  const Vec y = x * scale;
  const double p2 = shifted_profile(1).value(y.norm());
  return (-2.0 * kPi * p2 * std::pow(t, -dim_ / alpha_) * scale) * y;
}

Mat DensityEvaluator::hessian(double t, const Vec& x) const {
  check_point(t, x);
  const double scale = std::pow(t, -1.0 / alpha_);
  const Vec y = x * scale;
  const double s = y.norm();
  const double p2 = shifted_profile(1).value(s);
  Mat h = Mat::Identity(dim_, dim_) * (-2.0 * kPi * p2);
  if (s > 0.0) h += (4.0 * kPi * kPi * shifted_profile(2).value(s)) * (y * y.transpose());
  return h * (std::pow(t, -dim_ / alpha_) * scale * scale);
}

double DensityEvaluator::density_at_origin(double t) const { return stablelike::density_at_origin(t, dim_, alpha_); }

double DensityEvaluator::density_series(const Vec& x, double* bound) const {
  check_point(1.0, x);
  const double s = x.norm();
  if (s < crossover()) throw DomainError("series evaluation refused inside the crossover radius");
  const auto v = profiles_[0]->series_sum(s);
  if (bound) *bound = v.bound;
  return v.value;
}

double DensityEvaluator::density_inversion(const Vec& x) const {
  check_point(1.0, x);
  return profiles_[0]->inversion(x.norm());
}

}  // namespace stablelike
