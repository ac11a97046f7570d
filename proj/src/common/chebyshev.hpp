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

#include <functional>
#include <vector>

namespace stablelike {

/// Chebyshev interpolant of a smooth function on [a, b].
class ChebyshevPanel {
 public:
  ChebyshevPanel() = default;
  ChebyshevPanel(const std::function<double(double)>& f, double a, double b, int nodes);
  static ChebyshevPanel from_values(const std::vector<double>& values, double a, double b);

  double operator()(double x) const;
  double derivative(double x) const;
  double lower() const { return a_; }
  double upper() const { return b_; }
  /// Magnitude of the last two coefficients, a cheap truncation-error proxy.
  double tail() const;
  const std::vector<double>& coefficients() const { return c_; }

  /// Chebyshev points of the first kind mapped to [a, b], in the order `from_values` expects.
  static std::vector<double> nodes(double a, double b, int n);

 private:
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> c_;
  std::vector<double> dc_;
};

/// Piecewise Chebyshev interpolant over contiguous panels.
class PiecewiseChebyshev {
 public:
  PiecewiseChebyshev() = default;
  explicit PiecewiseChebyshev(std::vector<ChebyshevPanel> panels);

  bool empty() const { return panels_.empty(); }
  double lower() const { return panels_.front().lower(); }
  double upper() const { return panels_.back().upper(); }
  double operator()(double x) const { return locate(x)(x); }
  double derivative(double x) const { return locate(x).derivative(x); }
  std::size_t size() const { return panels_.size(); }

 private:
  const ChebyshevPanel& locate(double x) const;
  std::vector<ChebyshevPanel> panels_;
  std::vector<double> uppers_;
};

}  // namespace stablelike
