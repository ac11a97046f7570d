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

#include "density/radial_table.hpp"

#include <cmath>
#include <vector>

namespace stablelike {
namespace {

void build_panels(const RadialProfile& profile, double a, double b, int nodes, int depth,
                  std::vector<ChebyshevPanel>& out) {
  ChebyshevPanel panel([&](double s) { return profile.inversion(s); }, a, b, nodes);
  const double scale = std::min(std::abs(panel(a)), std::abs(panel(b)));
  if (depth < 8 && panel.tail() > 0.1 * profile.config().tolerance * scale) {
    const double mid = 0.5 * (a + b);
    build_panels(profile, a, mid, nodes, depth + 1, out);
    build_panels(profile, mid, b, nodes, depth + 1, out);
    return;
  }
  out.push_back(std::move(panel));
}

}  // namespace

DensityTable::DensityTable(const RadialProfile& profile, int nodes)
    : profile_(&profile), crossover_(profile.crossover()) {
  table_end_ = std::isfinite(crossover_) ? crossover_ : 20.0;
  std::vector<ChebyshevPanel> panels;
  double a = 0.0, b = std::min(0.5, table_end_);
  while (a < table_end_) {
    build_panels(profile, a, b, nodes, 0, panels);
    a = b;
    b = std::min(2.0 * b, table_end_);
  }
  table_ = PiecewiseChebyshev(std::move(panels));
}

double DensityTable::operator()(double s) const {
  s = std::abs(s);
  if (s < table_end_) return table_(s);
  if (s >= crossover_) return profile_->tail(s);
  return profile_->inversion(s);
}

}  // namespace stablelike
