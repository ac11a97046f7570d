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

#include "model/model.hpp"

#include <cmath>
#include <fstream>

#include "common/error.hpp"

namespace stablelike {
namespace {

std::vector<double> to_vector(const Vec& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace

ModelPtr VariableOrderModel::from_json(const Json& config) {
  if (!config.is_object()) throw InvalidArgument("model config must be a JSON object");
  for (const char* key : {"dim", "alpha", "xi", "n"}) {
    if (!config.contains(key)) throw InvalidArgument(std::string("model config is missing '") + key + "'");
  }
  std::shared_ptr<VariableOrderModel> m(new VariableOrderModel());
  m->dim_ = config.at("dim").get<int>();
  if (m->dim_ < 1 || m->dim_ > kMaxDim) throw InvalidArgument("model dimension must lie in 1..3");
  m->alpha_ = make_scalar_field(config.at("alpha"), m->dim_);
  m->xi_ = make_scalar_field(config.at("xi"), m->dim_, m->alpha_);
  m->weight_ = make_kernel_weight(config.at("n"));
  m->holder_eps_ = config.value("holder_eps", 0.5);
  m->gamma_exp_ = config.value("gamma_exp", 0.5);

  const Range a = m->alpha_->range();
  const Range xi = m->xi_->range();
  const Range n = m->weight_->range(xi);
  m->bounds_ = {n.lo, n.hi, xi.hi, a.lo, a.hi};
  if (config.contains("bounds")) {
    const auto& b = config.at("bounds");
    m->bounds_.c_lower = b.value("c_lower", m->bounds_.c_lower);
    m->bounds_.c_upper = b.value("c_upper", m->bounds_.c_upper);
    m->bounds_.zeta = b.value("zeta", m->bounds_.zeta);
    m->bounds_.alpha_low = b.value("alpha_low", m->bounds_.alpha_low);
    m->bounds_.alpha_high = b.value("alpha_high", m->bounds_.alpha_high);
  }
  const auto& bd = m->bounds_;
  if (!(bd.alpha_low > 0.0 && bd.alpha_low <= bd.alpha_high && bd.alpha_high < 2.0)) {
    throw ModelError("alpha bounds must satisfy 0 < alpha_low <= alpha_high < 2");
  }
  if (!(bd.c_lower > 0.0 && bd.c_lower <= bd.c_upper)) throw ModelError("kernel weight bounds must satisfy 0 < c_lower <= c_upper");
  if (!(bd.zeta > 0.0)) throw ModelError("xi bound zeta must be positive");
  return m;
}

double VariableOrderModel::alpha(const Vec& x) const {
  const double a = (*alpha_)(x);
  if (!std::isfinite(a)) throw ModelError("alpha is not finite", to_vector(x));
  if (a < bounds_.alpha_low - 1e-12 || a > bounds_.alpha_high + 1e-12) {
    throw ModelError("alpha left its stated bounds", to_vector(x));
  }
  return a;
}

double VariableOrderModel::xi(const Vec& x) const {
  const double v = (*xi_)(x);
  if (!std::isfinite(v)) throw ModelError("xi is not finite", to_vector(x));
  return v;
}

Json VariableOrderModel::to_json() const {
  return {{"dim", dim_},
          {"alpha", alpha_->to_json()},
          {"xi", xi_->to_json()},
          {"n", weight_->to_json()},
          {"holder_eps", holder_eps_},
          {"gamma_exp", gamma_exp_},
          {"bounds",
           {{"c_lower", bounds_.c_lower},
            {"c_upper", bounds_.c_upper},
            {"zeta", bounds_.zeta},
            {"alpha_low", bounds_.alpha_low},
            {"alpha_high", bounds_.alpha_high}}}};
}

ModelPtr load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model config '" + path + "'");
  Json config;
  try {
    in >> config;
  } catch (const Json::parse_error& e) {
    throw IoError("cannot parse model config '" + path + "': " + e.what());
  }
  return VariableOrderModel::from_json(config);
}

}  // namespace stablelike
