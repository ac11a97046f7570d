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

#include <limits>

#include "common/linalg.hpp"

namespace stablelike {

/// A C² function on R^d with exact first and second derivatives.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;

  /// sup |f|.
  virtual double sup_norm() const = 0;
  /// f(x + h) = 0 whenever |h| > support_reach(x); infinity without compact support.
  virtual double support_reach(const Vec&) const { return std::numeric_limits<double>::infinity(); }
  /// Length over which f changes appreciably; sets the angular resolution of quadratures.
  virtual double length_scale() const = 0;
  /// Wavenumber of undamped far-field oscillation, 0 when f decays.
  virtual double frequency() const { return 0.0; }
};

}  // namespace stablelike
