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

#include "perturbation/perturbation.hpp"

#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/quadrature.hpp"

namespace stablelike {

std::shared_ptr<const ResolventKernel> ResolventCache::get(int dim, double alpha) {
  const auto key = std::make_pair(dim, alpha);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = kernels_.find(key);
    if (it != kernels_.end()) return it->second;
  }
  auto kernel = std::make_shared<const ResolventKernel>(dim, alpha);
  std::lock_guard<std::mutex> lock(mu_);
  return kernels_.emplace(key, std::move(kernel)).first->second;
}

std::shared_ptr<const SmoothFunction> frozen_resolvent(const VariableOrderModel& model, const Vec& y, double lambda,
                                                       double eps, ResolventCache* cache) {
  const int d = model.dim();
  const double a = model.alpha(y);
  auto kernel = cache ? cache->get(d, a) : std::make_shared<const ResolventKernel>(d, a);
  auto mr = std::make_shared<const MollifiedResolvent>(kernel, lambda, eps, model.xi(y));
  if (d == 1) return std::make_shared<const MollifiedTable>(mr);
  return mr;
}

Json JTerms::to_json() const {
  return {{"lambda", lambda}, {"J", total}, {"near", near}, {"far", far}, {"sum", sum()}, {"nodes", nodes}};
}

namespace {

struct YNode {
  Vec y;
  Vec u;  // x - y
  double rho;
  double weight;  // quadrature weight times |g(y)|
};

std::vector<YNode> y_nodes(const TestFunction& g, const Vec& x, const PerturbationConfig& cfg) {
  const int d = g.dim();
  const double reach = g.support_reach(x);
  if (!std::isfinite(reach)) throw InvalidArgument("perturbation: g must have compact support");
  std::vector<double> edges{0.0};
  for (double r = 0.25 * cfg.eps; r < reach; r *= 2.0) edges.push_back(r);
  edges.push_back(reach);

  std::vector<std::pair<Vec, double>> dirs;
  if (d == 1) {
    dirs = {{Vec::Constant(1, 1.0), 1.0}, {Vec::Constant(1, -1.0), 1.0}};
  } else if (d == 2) {
    const int n = 2 * cfg.angular_order;
    for (int k = 0; k < n; ++k) {
      const double th = (k + 0.5) * 2.0 * kPi / n;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      dirs.push_back({v, 2.0 * kPi / n});
    }
  } else {
    const auto& gl = quad::gauss_legendre(cfg.angular_order);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      for (double t : {gl.nodes[i], -gl.nodes[i]}) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        const int nphi = 2 * cfg.angular_order;
        for (int j = 0; j < nphi; ++j) {
          const double ph = (j + 0.5) * 2.0 * kPi / nphi;
          Vec v(3);
          v << s * std::cos(ph), s * std::sin(ph), t;
          dirs.push_back({v, gl.weights[i] * 2.0 * kPi / nphi});
        }
        if (gl.nodes[i] == 0.0) break;
      }
    }
  }

  const auto& gl = quad::gauss_legendre(cfg.radial_order);
  std::vector<YNode> out;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      for (double node : {gl.nodes[i], -gl.nodes[i]}) {
        const double rho = c + h * node;
        for (const auto& [dir, wdir] : dirs) {
          YNode n;
          n.u = rho * dir;
          n.y = x - n.u;
          n.rho = rho;
          const double gy = std::abs(g.value(n.y));
          n.weight = gl.weights[i] * h * std::pow(rho, d - 1) * wdir * gy;
          if (n.weight > 0.0) out.push_back(std::move(n));
        }
        if (gl.nodes[i] == 0.0) break;
      }
    }
  }
  return out;
}

constexpr DifferenceKind kKinds[3] = {DifferenceKind::kLMinusMx, DifferenceKind::kMxMinusMxy,
                                      DifferenceKind::kMxyMinusMy};

}  // namespace

JTerms j_terms(const VariableOrderModel& model, double lambda, const TestFunction& g, const Vec& x,
               const PerturbationConfig& config, ResolventCache* cache) {
  if (!(lambda >= 1.0)) throw InvalidArgument("perturbation: lambda must be >= 1");
  if (g.dim() != model.dim() || x.size() != model.dim()) throw InvalidArgument("perturbation: dimension mismatch");
  ResolventCache local;
  if (!cache) cache = &local;
  const auto nodes = y_nodes(g, x, config);
  std::vector<std::array<double, 3>> values(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const auto& n = nodes[i];
    std::array<RadialKernel, 3> kernels{difference_kernel(kKinds[0], model, x, n.y),
                                        difference_kernel(kKinds[1], model, x, n.y),
                                        difference_kernel(kKinds[2], model, x, n.y)};
    values[i] = {0.0, 0.0, 0.0};
    if (kernels[0].vanishes() && kernels[1].vanishes() && kernels[2].vanishes()) return;
    const auto r = frozen_resolvent(model, n.y, lambda, config.eps, cache);
    for (int k = 0; k < 3; ++k) {
      if (kernels[k].vanishes()) continue;
      try {
        values[i][k] = std::abs(apply(kernels[k], *r, n.u, config.apply).value);
      } catch (const ConvergenceError& e) {
        std::ostringstream where;
        where << difference_name(kKinds[k]) << " at y = (" << n.y.transpose() << "), lambda = " << lambda;
        throw e.in_context(where.str());
      }
    }
  });
  JTerms out;
  out.lambda = lambda;
  out.nodes = static_cast<int>(nodes.size());
  const double split = std::pow(lambda, -0.25);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const double v = nodes[i].weight * values[i][k];
      out.total[k] += v;
      (nodes[i].rho <= split ? out.near : out.far)[k] += v;
    }
  }
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw InvalidArgument("geometric grid: need 0 < lo < hi and 2+ points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  out.back() = hi;
  return out;
}

Json ContractionScan::to_json() const {
  Json rows_json = Json::array();
  for (const auto& r : rows) rows_json.push_back(r.to_json());
  Json out{{"rows", rows_json},       {"g_norm", g_norm},   {"decay_slope", decay_slope},
           {"decade_ratio", decade_ratio}, {"monotone", monotone}, {"j2_plateau", j2_plateau},
           {"j2_resolved_ratio", j2_resolved_ratio},
           {"success", success()}};
  out["lambda_tilde"] = lambda_tilde ? Json(*lambda_tilde) : Json(nullptr);
  return out;
}

ContractionScan contraction_scan(const VariableOrderModel& model, const TestFunction& g, const Vec& x,
                                 const std::vector<double>& lambdas, const PerturbationConfig& config) {
  if (lambdas.size() < 8) throw InvalidArgument("contraction scan: need at least 8 lambda values");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 1.0)) throw InvalidArgument("contraction scan: lambda values must be >= 1");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw InvalidArgument("contraction scan: lambda grid must increase");
  }
  const double decades = std::log10(lambdas.back() / lambdas.front());
  if (decades < 4.0 - 1e-9) throw InvalidArgument("contraction scan: lambda grid must span at least 4 decades");
  const double ratio0 = lambdas[1] / lambdas[0];
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (std::abs(lambdas[i] / lambdas[i - 1] / ratio0 - 1.0) > 1e-6) {
      throw InvalidArgument("contraction scan: lambda grid must be geometric");
    }
  }

  ContractionScan scan;
  scan.g_norm = g.sup_norm();
  ResolventCache cache;
  for (double lambda : lambdas) scan.rows.push_back(j_terms(model, lambda, g, x, config, &cache));
  for (const auto& r : scan.rows) {
    if (r.sum() <= 0.5 * scan.g_norm) {
      scan.lambda_tilde = r.lambda;
      break;
    }
  }
  for (int k = 0; k < 3; ++k) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : scan.rows) {
      if (r.total[k] <= 0.0) continue;
      const double lx = std::log(r.lambda), ly = std::log(r.total[k]);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      ++n;
    }
    scan.decay_slope[k] = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    const double first = scan.rows.front().total[k], last = scan.rows.back().total[k];
    scan.decade_ratio[k] = (first > 0.0 && last > 0.0) ? std::pow(last / first, 1.0 / decades) : 0.0;
    for (std::size_t i = 1; i < scan.rows.size(); ++i) {
      if (scan.rows[i].total[k] > 1.05 * scan.rows[i - 1].total[k]) scan.monotone = false;
    }
  }
  // Below λ = ε^{-α_high} the mollifier is finer than the resolvent scale λ^{-1/α}; beyond it
  // every J term decays like 1/λ whatever the modulus of ξ, so the plateau is read off below.
  const double resolved = std::pow(config.eps, -model.bounds().alpha_high);
  std::size_t last = 0;
  while (last + 1 < scan.rows.size() && scan.rows[last + 1].lambda <= resolved) ++last;
  const double j_first = scan.rows.front().total[1], j_last = scan.rows[last].total[1];
  const double window = std::log10(scan.rows[last].lambda / scan.rows.front().lambda);
  if (last > 0 && j_first > 0.0 && j_last > 0.0) {
    scan.j2_resolved_ratio = std::pow(j_last / j_first, 1.0 / window);
    scan.j2_plateau = scan.j2_resolved_ratio > 0.9;
  }
  return scan;
}

BoundWitness bound_witness(const VariableOrderModel& model, DifferenceKind kind, double lambda, const Vec& x,
                           const Vec& y, double r_min, double r_max, int points, const PerturbationConfig& config) {
  const int d = model.dim();
  const auto r = frozen_resolvent(model, y, lambda, config.eps);
  const auto kernel = difference_kernel(kind, model, x, y);
  const double ax = model.alpha(x), ay = model.alpha(y);
  const double dxi = std::abs(model.xi(x) - model.xi(y));
  const double eta = 0.5 * model.holder_eps();
  const double a_low = model.bounds().alpha_low;
  auto lhs = [&](double s) {
    if (kernel.vanishes()) return 0.0;
    Vec u = Vec::Zero(d);
    u(0) = s;
    return apply(kernel, *r, u, config.apply).value;
  };
  auto rhs = [&](double s) {
    const double log_factor = std::abs(std::log(0.5 * s));
    switch (kind) {
      case DifferenceKind::kLMinusMx:
        return s <= 1.0 ? std::pow(s, -(d + ax - ay - eta)) : std::pow(s, -(d + ax + ay)) / lambda;
      case DifferenceKind::kMxMinusMxy:
        return s <= 1.0 ? dxi * std::pow(s, -d) : std::pow(s, -d - 2.0 * a_low) / lambda;
      case DifferenceKind::kMxyMinusMy: {
        const double da = std::abs(ax - ay);
        return s <= 1.0 ? da * std::pow(s, -d - da) * log_factor
                        : std::pow(s, -d - 2.0 * std::min(ax, ay)) * log_factor / lambda;
      }
    }
    return 0.0;
  };
  return fit_bound(difference_name(kind), lhs, rhs, r_min, r_max, points);
}

}  // namespace stablelike
