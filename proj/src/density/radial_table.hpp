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

#include "common/chebyshev.hpp"
#include "density/stable_density.hpp"

namespace stablelike {

/// Fast interpolant of a radial profile: piecewise Chebyshev on [0, M] and the fixed-order
/// tail polynomial beyond. Falls back to inversion beyond the table when M is infinite.
class DensityTable {
 public:
  explicit DensityTable(const RadialProfile& profile, int nodes = 32);

  double operator()(double s) const;
  double crossover() const { return crossover_; }
  const RadialProfile& profile() const { return *profile_; }

 private:
  const RadialProfile* profile_;
  double crossover_;
  double table_end_;
  PiecewiseChebyshev table_;
};

}  // namespace stablelike
