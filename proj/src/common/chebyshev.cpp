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

#include "common/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "common/linalg.hpp"

namespace stablelike {
namespace {

double clenshaw(const std::vector<double>& c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

std::vector<double> derivative_coefficients(const std::vector<double>& c, double half_width) {
  const std::size_t n = c.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[n - 2] = 2.0 * (n - 1) * c[n - 1];
  for (std::size_t k = n - 2; k-- > 0;) {
    d[k] = (k + 2 < n ? d[k + 2] : 0.0) + 2.0 * (k + 1) * c[k + 1];
  }
  d[0] *= 0.5;
  for (auto& v : d) v /= half_width;
  return d;
}

}  // namespace

std::vector<double> ChebyshevPanel::nodes(double a, double b, int n) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) {
    const double t = std::cos(kPi * (j + 0.5) / n);
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  return x;
}

ChebyshevPanel ChebyshevPanel::from_values(const std::vector<double>& values, double a, double b) {
  if (values.empty() || !(b > a)) throw InvalidArgument("Chebyshev panel needs values on a non-empty interval");
  ChebyshevPanel p;
  p.a_ = a;
  p.b_ = b;
  const int n = static_cast<int>(values.size());
  p.c_.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += values[j] * std::cos(kPi * k * (j + 0.5) / n);
    p.c_[k] = (k == 0 ? 1.0 : 2.0) * s / n;
  }
  p.dc_ = derivative_coefficients(p.c_, 0.5 * (b - a));
  return p;
}

ChebyshevPanel::ChebyshevPanel(const std::function<double(double)>& f, double a, double b, int nodes_count) {
  const auto x = nodes(a, b, nodes_count);
  std::vector<double> v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = f(x[j]);
  *this = from_values(v, a, b);
}

double ChebyshevPanel::operator()(double x) const {
  const double t = std::clamp((2.0 * x - a_ - b_) / (b_ - a_), -1.0, 1.0);
  return clenshaw(c_, t);
}

double ChebyshevPanel::derivative(double x) const {
  const double t = std::clamp((2.0 * x - a_ - b_) / (b_ - a_), -1.0, 1.0);
  return clenshaw(dc_, t);
}

double ChebyshevPanel::tail() const {
  const std::size_t n = c_.size();
  if (n < 2) return 0.0;
  return std::abs(c_[n - 1]) + std::abs(c_[n - 2]);
}

PiecewiseChebyshev::PiecewiseChebyshev(std::vector<ChebyshevPanel> panels) : panels_(std::move(panels)) {
  if (panels_.empty()) throw InvalidArgument("piecewise interpolant needs at least one panel");
  uppers_.reserve(panels_.size());
  for (const auto& p : panels_) uppers_.push_back(p.upper());
}

const ChebyshevPanel& PiecewiseChebyshev::locate(double x) const {
  auto it = std::lower_bound(uppers_.begin(), uppers_.end(), x);
  if (it == uppers_.end()) return panels_.back();
  return panels_[static_cast<std::size_t>(it - uppers_.begin())];
}

}  // namespace stablelike
