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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace stablelike::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  double bound(double value) const { return std::max(abs, rel * std::abs(value)); }
};

/// Gauss-Legendre rule on [-1, 1]; only the nonnegative half of the symmetric nodes is stored.
struct GaussLegendreRule {
  int order = 0;
  std::vector<double> nodes;    // x_i >= 0, descending
  std::vector<double> weights;  // matching weights
};

/// Immutable rule for the given order (built once, shared read-only). Orders 2..256.
const GaussLegendreRule& gauss_legendre(int order);

/// Fixed-order Gauss-Legendre on [a, b].
template <class F>
double gauss_legendre_fixed(F&& f, double a, double b, int order) {
  const auto& rule = gauss_legendre(order);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    if (x == 0.0) {
      sum += rule.weights[i] * f(c);
    } else {
      sum += rule.weights[i] * (f(c - h * x) + f(c + h * x));
    }
  }
  return sum * h;
}

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525182790, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error, floor;  // floor: rounding limit 50·eps·∫|f|
};

template <class F>
Segment kronrod21(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = 0.0;
  double resk = fc * kWgk[10];
  double resabs = std::abs(resk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double s = fv1[j] + fv2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  const double ah = std::abs(h);
  resk *= h;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs(resk - resg * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double floor = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(floor, err);
  if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
  return {a, b, resk, err, floor};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21-point) over the panels defined by `breaks`
/// (ascending, at least two entries). Bisects the worst panel until the summed error
/// estimate meets the tolerance or `max_segments` is reached. A result whose error is
/// within twice the accumulated rounding floor counts as converged.
/// Repeated averaging of the partial sums partial[end-depth-1 .. end-1] of an alternating series.
inline double euler_average(const std::vector<double>& partial, std::size_t end, int depth) {
  std::vector<double> w(partial.begin() + static_cast<long>(end - depth - 1), partial.begin() + static_cast<long>(end));
  for (int level = 0; level < depth; ++level) {
    for (std::size_t i = 0; i + 1 < w.size() - level; ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
  }
  return w[0];
}

template <class F>
Result gauss_kronrod(F&& f, std::span<const double> breaks, Tolerance tol, int max_segments = 2000) {
  Result out;
  if (breaks.size() < 2) return out;
  std::vector<detail::Segment> heap;
  heap.reserve(breaks.size() + 64);
  auto cmp = [](const detail::Segment& l, const detail::Segment& r) { return l.error < r.error; };
  double total = 0.0, error = 0.0, floor = 0.0;
  auto done = [&] { return error <= tol.bound(total) || error <= 2.0 * floor; };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto s = detail::kronrod21(f, breaks[i], breaks[i + 1]);
    out.evaluations += 21;
    total += s.value;
    error += s.error;
    floor += s.floor;
    heap.push_back(s);
  }
  std::make_heap(heap.begin(), heap.end(), cmp);
  while (!heap.empty() && !done() && static_cast<int>(heap.size()) < max_segments) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    auto l = detail::kronrod21(f, worst.a, mid);
    auto r = detail::kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    total += l.value + r.value - worst.value;
    error += l.error + r.error - worst.error;
    floor += l.floor + r.floor - worst.floor;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), cmp);
  }
  // Re-sum to shed accumulated rounding from the running updates.
  total = 0.0;
  error = 0.0;
  floor = 0.0;
  for (const auto& s : heap) {
    total += s.value;
    error += s.error;
    floor += s.floor;
  }
  out.value = total;
  out.error = error;
  out.converged = done();
  return out;
}

template <class F>
Result gauss_kronrod(F&& f, double a, double b, Tolerance tol, int max_segments = 2000) {
  const double br[2] = {a, b};
  return gauss_kronrod(std::forward<F>(f), std::span<const double>(br, 2), tol, max_segments);
}

/// Double-exponential (tanh-sinh) quadrature on [a, b]. Robust to integrable algebraic
/// singularities at either endpoint; the integrand is never evaluated at a or b.
template <class F>
Result tanh_sinh(F&& f, double a, double b, Tolerance tol, int max_level = 8) {
  Result out;
  const double half = 0.5 * (b - a);
  constexpr double kHalfPi = 1.5707963267948966;
  constexpr double kTmax = 3.2;  // exp(-pi/2 sinh t) underflows relative offsets beyond this
  // Node pair at parameter t: offsets from each endpoint measured directly to keep precision.
  auto pair = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double offset = 2.0 * half * e / (1.0 + e);  // distance from endpoint
    const double cu = std::cosh(u);
    const double w = kHalfPi * std::cosh(t) / (cu * cu);
    double s = 0.0;
    if (offset > 0.0) {
      const double xl = a + offset;
      const double xr = b - offset;
      if (xl > a && xl < b) s += f(xl);
      if (xr > a && xr < b) s += f(xr);
    }
    out.evaluations += 2;
    return w * s;
  };
  double h = 0.5;
  double sum = kHalfPi * f(a + half);
  out.evaluations = 1;
  for (double t = h; t <= kTmax; t += h) sum += pair(t);
  double estimate = sum * h * half;
  double previous = estimate;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTmax; t += 2.0 * h) sum += pair(t);
    estimate = sum * h * half;
    const double diff = std::abs(estimate - previous);
    if (level >= 3 && diff <= tol.bound(estimate)) {
      out.value = estimate;
      out.error = diff;
      out.converged = true;
      return out;
    }
    previous = estimate;
  }
  out.value = estimate;
  out.error = std::abs(estimate - previous);
  out.converged = out.error <= tol.bound(estimate);
  return out;
}

}  // namespace stablelike::quad
