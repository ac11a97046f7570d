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

#include "montecarlo/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "common/quadrature.hpp"

namespace stablelike {

Rng path_stream(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double sample_subordinator(double alpha, double t, Rng& rng) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("subordinator: alpha must lie in (0, 2)");
  if (!(t > 0.0)) throw DomainError("subordinator: time must be positive");
  const double a = 0.5 * alpha;
  std::uniform_real_distribution<double> unif(0.0, kPi);
  std::exponential_distribution<double> expo(1.0);
  double u = unif(rng);
  while (u <= 0.0) u = unif(rng);
  const double e = expo(rng);
  const double s = std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) * std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
  return std::pow(t, 1.0 / a) * s;
}

Vec sample_stable_increment(double alpha, double t, int dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  const double s = sample_subordinator(alpha, t, rng);
  Vec g(dim);
  for (int i = 0; i < dim; ++i) g[i] = gauss(rng);
  return std::sqrt(2.0 * s) * g;
}

Vec sample_direction(int dim, Rng& rng) {
  if (dim == 1) {
    std::bernoulli_distribution coin;
    return Vec::Constant(1, coin(rng) ? 1.0 : -1.0);
  }
  std::normal_distribution<double> gauss;
  Vec v(dim);
  double n = 0.0;
  while (n == 0.0) {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    n = v.norm();
  }
  return v / n;
}

StableCdf::StableCdf(double alpha, double t) : alpha_(alpha), scale_(std::pow(t, -1.0 / alpha)) {
  DensityEvaluator density(1, alpha);
  const auto& profile = density.profile();
  split_ = profile.crossover();
  const int terms = profile.series_sum(split_).terms;
  for (int k = 1; k <= terms; ++k) tail_coeffs_.push_back(profile.coefficients()[k] / (k * alpha));

  std::vector<ChebyshevPanel> panels;
  const double width = 0.25;
  double acc = 0.0;
  for (double a = 0.0; a < split_ - 1e-12; a += width) {
    const double b = std::min(split_, a + width);
    const auto xs = ChebyshevPanel::nodes(a, b, 16);
    std::vector<double> vals;
    for (double x : xs) {
      auto r = quad::gauss_kronrod([&](double s) { return profile.value(s); }, a, x, {1e-15, 1e-13}, 200);
      vals.push_back(acc + r.value);
    }
    panels.push_back(ChebyshevPanel::from_values(vals, a, b));
    acc += quad::gauss_kronrod([&](double s) { return profile.value(s); }, a, b, {1e-15, 1e-13}, 200).value;
  }
  head_ = PiecewiseChebyshev(std::move(panels));
}

double StableCdf::half_mass(double s) const {
  if (s < split_) return head_(s);
  const double w = std::pow(s, -alpha_);
  double acc = 0.0;
  for (std::size_t k = tail_coeffs_.size(); k-- > 0;) acc = acc * w + tail_coeffs_[k];
  return 0.5 - acc * w;
}

double StableCdf::operator()(double x) const {
  const double s = std::abs(x) * scale_;
  const double h = half_mass(s);
  return x >= 0.0 ? 0.5 + h : 0.5 - h;
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("KS test: no samples");
  std::sort(samples.begin(), samples.end());
  KsResult out;
  out.n = samples.size();
  const double n = static_cast<double>(out.n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    out.statistic = std::max({out.statistic, (i + 1) / n - f, f - i / n});
  }
  out.critical = 1.6276 / std::sqrt(n);
  return out;
}

}  // namespace stablelike
