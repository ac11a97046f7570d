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

#pragma once

#include <memory>
#include <string>

#include "common/linalg.hpp"
#include "json.hpp"

namespace stablelike {

using Json = nlohmann::json;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Scalar field on R^d (used for α and ξ), selected from a fixed set of parametric families.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual double operator()(const Vec& x) const = 0;
  /// Analytic range over R^d.
  virtual Range range() const = 0;
  virtual bool is_constant() const { return false; }
  const std::string& family() const { return family_; }
  const Json& params() const { return params_; }
  Json to_json() const { return {{"family", family_}, {"params", params_}}; }

 protected:
  ScalarField(std::string family, Json params) : family_(std::move(family)), params_(std::move(params)) {}

 private:
  std::string family_;
  Json params_;
};

/// Kernel weight n(x, h). All families depend on h through |h| only.
class KernelWeight {
 public:
  virtual ~KernelWeight() = default;
  virtual double operator()(const Vec& x, double xi_x, double h_norm) const = 0;
  /// Range over (x, h) given the range of ξ.
  virtual Range range(Range xi_range) const = 0;
  /// True when n(x, h) = ξ(x) for every h.
  virtual bool matches_xi() const { return false; }
  /// ∫_0^ρ r^{1-α} n(x, r) dr for ρ ≤ 1.
  virtual double small_moment(const Vec& x, double xi_x, double alpha, double rho) const;
  const std::string& family() const { return family_; }
  const Json& params() const { return params_; }
  Json to_json() const { return {{"family", family_}, {"params", params_}}; }

 protected:
  KernelWeight(std::string family, Json params) : family_(std::move(family)), params_(std::move(params)) {}

 private:
  std::string family_;
  Json params_;
};

/// Families: constant{value}, sinusoidal{base, amp, freq, axis}, log_modulus{base, amp, axis},
/// gaussian_bump{base, amp, width}, stable_calibrated{alpha field} (ξ only).
/// `alpha` is required by stable_calibrated and ignored otherwise.
std::shared_ptr<const ScalarField> make_scalar_field(const Json& spec, int dim,
                                                     std::shared_ptr<const ScalarField> alpha = nullptr);

/// Families: match_xi, constant{value}, holder_offset{amp, power}, oscillating{base, amp}.
std::shared_ptr<const KernelWeight> make_kernel_weight(const Json& spec);

}  // namespace stablelike
