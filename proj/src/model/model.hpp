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

#include "model/fields.hpp"

namespace stablelike {

struct ModelBounds {
  double c_lower = 0.0;  // inf n
  double c_upper = 0.0;  // sup n
  double zeta = 0.0;     // sup ξ
  double alpha_low = 0.0;
  double alpha_high = 0.0;
};

/// The triple (α, n, ξ) with its stated bounds and exponents. Immutable once built.
class VariableOrderModel {
 public:
  /// Keys: dim, alpha, xi, n (each {family, params}), holder_eps, gamma_exp, optional bounds
  /// overriding the analytic family ranges.
  static std::shared_ptr<const VariableOrderModel> from_json(const Json& config);

  int dim() const { return dim_; }
  const ModelBounds& bounds() const { return bounds_; }
  double holder_eps() const { return holder_eps_; }
  double gamma_exp() const { return gamma_exp_; }

  /// α(x); throws ModelError if the value leaves [alpha_low, alpha_high].
  double alpha(const Vec& x) const;
  double xi(const Vec& x) const;
  double n(const Vec& x, double h_norm) const { return weight_->operator()(x, xi(x), h_norm); }
  double n(const Vec& x, double xi_x, double h_norm) const { return weight_->operator()(x, xi_x, h_norm); }

  const ScalarField& alpha_field() const { return *alpha_; }
  const ScalarField& xi_field() const { return *xi_; }
  const KernelWeight& weight() const { return *weight_; }

  /// α and ξ constant: the kernel does not depend on x.
  bool homogeneous() const { return alpha_->is_constant() && xi_->is_constant(); }
  /// Homogeneous with n ≡ ξ: every operator difference vanishes.
  bool constant_coefficients() const { return homogeneous() && weight_->matches_xi(); }

  Json to_json() const;

 private:
  VariableOrderModel() = default;

  int dim_ = 1;
  std::shared_ptr<const ScalarField> alpha_;
  std::shared_ptr<const ScalarField> xi_;
  std::shared_ptr<const KernelWeight> weight_;
  ModelBounds bounds_;
  double holder_eps_ = 0.5;
  double gamma_exp_ = 0.5;
};

using ModelPtr = std::shared_ptr<const VariableOrderModel>;

/// Parses a model config file. Throws IoError when the file cannot be read or parsed.
ModelPtr load_model(const std::string& path);

}  // namespace stablelike
