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

#include "common/function.hpp"
#include "model/fields.hpp"

namespace stablelike {

/// Bounded C² test functions with analytic derivatives.
/// Families: constant{value}, cosine{u} (cos(u·x)), gaussian{center, width}
/// (exp(-|x-c|²/2w²)), polybump{center, radius} ((1-|x-c|²/R²)^4 inside the ball).
/// Every family takes an optional `amplitude` multiplier.
class TestFunction final : public SmoothFunction {
 public:
  enum class Family { kConstant, kCosine, kGaussian, kPolyBump };

  static TestFunction constant(int dim, double value);
  static TestFunction cosine(const Vec& u);
  static TestFunction gaussian(const Vec& center, double width);
  static TestFunction polybump(const Vec& center, double radius);
  /// {"family": ..., "params": {...}}; vector parameters default to the origin.
  static TestFunction from_json(const Json& spec, int dim);
  /// Compact form `family:key=v1,v2;key=v`, e.g. `cosine:u=2` or `polybump:center=0,0;radius=1`.
  static TestFunction parse(const std::string& text, int dim);

  Family family() const { return family_; }
  TestFunction scaled(double amplitude) const;

  int dim() const override { return static_cast<int>(center_.size()); }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  double sup_norm() const override { return std::abs(amplitude_); }
  double support_reach(const Vec& x) const override;
  double length_scale() const override;
  double frequency() const override;

  Json to_json() const;
  std::string label() const;

 private:
  TestFunction(Family family, Vec center, double scale, double amplitude)
      : family_(family), center_(std::move(center)), scale_(scale), amplitude_(amplitude) {}

  Family family_;
  Vec center_;  // wave vector u for cosine
  double scale_;
  double amplitude_;
};

}  // namespace stablelike
