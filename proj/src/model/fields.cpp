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

#include "model/fields.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "common/quadrature.hpp"
#include "special/special_functions.hpp"

namespace stablelike {
namespace {

double param(const Json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) throw InvalidArgument(std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

double required(const Json& p, const char* key) {
  if (!p.contains(key)) throw InvalidArgument(std::string("missing parameter '") + key + "'");
  return param(p, key, 0.0);
}

int axis_param(const Json& p, int dim) {
  const int axis = static_cast<int>(param(p, "axis", 0.0));
  if (axis < 0 || axis >= dim) throw InvalidArgument("axis parameter out of range");
  return axis;
}

class ConstantField final : public ScalarField {
 public:
  explicit ConstantField(const Json& p) : ScalarField("constant", p), value_(required(p, "value")) {}
  double operator()(const Vec&) const override { return value_; }
  Range range() const override { return {value_, value_}; }
  bool is_constant() const override { return true; }

 private:
  double value_;
};

class SinusoidalField final : public ScalarField {
 public:
  SinusoidalField(const Json& p, int dim)
      : ScalarField("sinusoidal", p),
        base_(required(p, "base")),
        amp_(required(p, "amp")),
        freq_(param(p, "freq", 1.0)),
        axis_(axis_param(p, dim)) {}
  double operator()(const Vec& x) const override { return base_ + amp_ * std::sin(freq_ * x[axis_]); }
  Range range() const override { return {base_ - std::abs(amp_), base_ + std::abs(amp_)}; }

 private:
  double base_, amp_, freq_;
  int axis_;
};

// base + amp / (1 + |ln|x_axis||); continuous at x_axis = 0 with value base.
class LogModulusField final : public ScalarField {
 public:
  LogModulusField(const Json& p, int dim)
      : ScalarField("log_modulus", p), base_(required(p, "base")), amp_(required(p, "amp")), axis_(axis_param(p, dim)) {}
  double operator()(const Vec& x) const override {
    const double v = std::abs(x[axis_]);
    if (v == 0.0) return base_;
    return base_ + amp_ / (1.0 + std::abs(std::log(v)));
  }
  Range range() const override { return {std::min(base_, base_ + amp_), std::max(base_, base_ + amp_)}; }

 private:
  double base_, amp_;
  int axis_;
};

class GaussianBumpField final : public ScalarField {
 public:
  GaussianBumpField(const Json& p, int dim)
      : ScalarField("gaussian_bump", p), base_(required(p, "base")), amp_(required(p, "amp")), width_(param(p, "width", 1.0)) {
    if (!(width_ > 0.0)) throw InvalidArgument("gaussian_bump width must be positive");
    center_ = Vec::Zero(dim);
    if (p.contains("center")) {
      const auto& c = p.at("center");
      if (!c.is_array() || static_cast<int>(c.size()) != dim) throw InvalidArgument("gaussian_bump center has wrong length");
      for (int i = 0; i < dim; ++i) center_[i] = c[i].get<double>();
    }
  }
  double operator()(const Vec& x) const override {
    return base_ + amp_ * std::exp(-(x - center_).squaredNorm() / (width_ * width_));
  }
  Range range() const override { return {std::min(base_, base_ + amp_), std::max(base_, base_ + amp_)}; }

 private:
  double base_, amp_, width_;
  Vec center_;
};

// ξ(x) = C_{d,α(x)}, so the frozen kernel at x has symbol exactly |u|^{α(x)}.
class StableCalibratedField final : public ScalarField {
 public:
  StableCalibratedField(const Json& p, int dim, std::shared_ptr<const ScalarField> alpha)
      : ScalarField("stable_calibrated", p), dim_(dim), alpha_(std::move(alpha)) {
    if (!alpha_) throw InvalidArgument("stable_calibrated xi needs the alpha field");
    const Range a = alpha_->range();
    if (!(a.lo > 0.0 && a.hi < 2.0)) throw ModelError("alpha range must lie inside (0, 2)", {});
    range_ = {fractional_laplacian_constant(dim_, a.lo), fractional_laplacian_constant(dim_, a.lo)};
    for (int i = 1; i <= 400; ++i) {
      const double c = fractional_laplacian_constant(dim_, a.lo + (a.hi - a.lo) * i / 400.0);
      range_.lo = std::min(range_.lo, c);
      range_.hi = std::max(range_.hi, c);
    }
  }
  double operator()(const Vec& x) const override { return fractional_laplacian_constant(dim_, (*alpha_)(x)); }
  Range range() const override { return range_; }
  bool is_constant() const override { return alpha_->is_constant(); }

 private:
  int dim_;
  std::shared_ptr<const ScalarField> alpha_;
  Range range_;
};

class MatchXiWeight final : public KernelWeight {
 public:
  explicit MatchXiWeight(const Json& p) : KernelWeight("match_xi", p) {}
  double operator()(const Vec&, double xi_x, double) const override { return xi_x; }
  Range range(Range xi) const override { return xi; }
  bool matches_xi() const override { return true; }
  double small_moment(const Vec&, double xi_x, double alpha, double rho) const override {
    return xi_x * std::pow(rho, 2.0 - alpha) / (2.0 - alpha);
  }
};

class ConstantWeight final : public KernelWeight {
 public:
  explicit ConstantWeight(const Json& p) : KernelWeight("constant", p), value_(required(p, "value")) {}
  double operator()(const Vec&, double, double) const override { return value_; }
  Range range(Range) const override { return {value_, value_}; }
  double small_moment(const Vec&, double, double alpha, double rho) const override {
    return value_ * std::pow(rho, 2.0 - alpha) / (2.0 - alpha);
  }

 private:
  double value_;
};

// ξ(x) + amp·(1 ∧ |h|^power)
class HolderOffsetWeight final : public KernelWeight {
 public:
  explicit HolderOffsetWeight(const Json& p)
      : KernelWeight("holder_offset", p), amp_(required(p, "amp")), power_(required(p, "power")) {
    if (!(power_ > 0.0)) throw InvalidArgument("holder_offset power must be positive");
  }
  double operator()(const Vec&, double xi_x, double h) const override {
    return xi_x + amp_ * std::min(1.0, std::pow(h, power_));
  }
  Range range(Range xi) const override { return {xi.lo + std::min(0.0, amp_), xi.hi + std::max(0.0, amp_)}; }
  double small_moment(const Vec&, double xi_x, double alpha, double rho) const override {
    return xi_x * std::pow(rho, 2.0 - alpha) / (2.0 - alpha) +
           amp_ * std::pow(rho, 2.0 - alpha + power_) / (2.0 - alpha + power_);
  }

 private:
  double amp_, power_;
};

// base + amp·sin(1/|h|): bounded but without a limit as h → 0.
class OscillatingWeight final : public KernelWeight {
 public:
  explicit OscillatingWeight(const Json& p)
      : KernelWeight("oscillating", p), base_(required(p, "base")), amp_(required(p, "amp")) {}
  double operator()(const Vec&, double, double h) const override { return base_ + amp_ * std::sin(1.0 / h); }
  Range range(Range) const override { return {base_ - std::abs(amp_), base_ + std::abs(amp_)}; }

 private:
  double base_, amp_;
};

}  // namespace

double KernelWeight::small_moment(const Vec& x, double xi_x, double alpha, double rho) const {
  // Substituting r = ρ v^{1/(2-α)} turns r^{1-α} dr into a constant multiple of dv.
  const double e = 1.0 / (2.0 - alpha);
  auto f = [&](double v) { return (*this)(x, xi_x, rho * std::pow(v, e)); };
  const auto res = quad::gauss_kronrod(f, 0.0, 1.0, {1e-12, 1e-8}, 4000);
  return res.value * std::pow(rho, 2.0 - alpha) * e;
}

std::shared_ptr<const ScalarField> make_scalar_field(const Json& spec, int dim,
                                                     std::shared_ptr<const ScalarField> alpha) {
  if (!spec.is_object() || !spec.contains("family")) throw InvalidArgument("field spec needs a 'family'");
  const std::string family = spec.at("family").get<std::string>();
  const Json params = spec.value("params", Json::object());
  if (family == "constant") return std::make_shared<ConstantField>(params);
  if (family == "sinusoidal") return std::make_shared<SinusoidalField>(params, dim);
  if (family == "log_modulus") return std::make_shared<LogModulusField>(params, dim);
  if (family == "gaussian_bump") return std::make_shared<GaussianBumpField>(params, dim);
  if (family == "stable_calibrated") return std::make_shared<StableCalibratedField>(params, dim, std::move(alpha));
  throw InvalidArgument("unknown field family '" + family + "'");
}

std::shared_ptr<const KernelWeight> make_kernel_weight(const Json& spec) {
  if (!spec.is_object() || !spec.contains("family")) throw InvalidArgument("kernel weight spec needs a 'family'");
  const std::string family = spec.at("family").get<std::string>();
  const Json params = spec.value("params", Json::object());
  if (family == "match_xi") return std::make_shared<MatchXiWeight>(params);
  if (family == "constant") return std::make_shared<ConstantWeight>(params);
  if (family == "holder_offset") return std::make_shared<HolderOffsetWeight>(params);
  if (family == "oscillating") return std::make_shared<OscillatingWeight>(params);
  throw InvalidArgument("unknown kernel weight family '" + family + "'");
}

}  // namespace stablelike
