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

#include "generator/test_function.hpp"

#include <cmath>
#include <sstream>

#include "common/error.hpp"

namespace stablelike {

namespace {

// e^{-50}: the Gaussian is treated as zero beyond 10 widths.
constexpr double kGaussianReach = 10.0;

Vec read_vector(const Json& params, const char* key, int dim) {
  Vec v = Vec::Zero(dim);
  if (!params.contains(key)) return v;
  const Json& j = params.at(key);
  if (j.is_number()) {
    if (dim != 1) throw InvalidArgument(std::string("test function: '") + key + "' needs " + std::to_string(dim) + " components");
    v(0) = j.get<double>();
    return v;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw InvalidArgument(std::string("test function: '") + key + "' needs " + std::to_string(dim) + " components");
  }
  for (int i = 0; i < dim; ++i) v(i) = j.at(i).get<double>();
  return v;
}

Json vector_json(const Vec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("test function: dimension must be 1..3");
}

}  // namespace

TestFunction TestFunction::constant(int dim, double value) {
  check_dim(dim);
  return TestFunction(Family::kConstant, Vec::Zero(dim), 1.0, value);
}

TestFunction TestFunction::cosine(const Vec& u) {
  check_dim(static_cast<int>(u.size()));
  return TestFunction(Family::kCosine, u, 1.0, 1.0);
}

TestFunction TestFunction::gaussian(const Vec& center, double width) {
  check_dim(static_cast<int>(center.size()));
  if (!(width > 0.0)) throw InvalidArgument("test function: gaussian width must be positive");
  return TestFunction(Family::kGaussian, center, width, 1.0);
}

TestFunction TestFunction::polybump(const Vec& center, double radius) {
  check_dim(static_cast<int>(center.size()));
  if (!(radius > 0.0)) throw InvalidArgument("test function: bump radius must be positive");
  return TestFunction(Family::kPolyBump, center, radius, 1.0);
}

TestFunction TestFunction::scaled(double amplitude) const {
  TestFunction out = *this;
  out.amplitude_ *= amplitude;
  return out;
}

TestFunction TestFunction::from_json(const Json& spec, int dim) {
  if (!spec.is_object() || !spec.contains("family")) throw InvalidArgument("test function: missing 'family'");
  const std::string family = spec.at("family").get<std::string>();
  const Json params = spec.value("params", Json::object());
  const double amplitude = params.value("amplitude", 1.0);
  if (family == "constant") return constant(dim, params.value("value", 1.0)).scaled(amplitude);
  if (family == "cosine") return cosine(read_vector(params, "u", dim)).scaled(amplitude);
  if (family == "gaussian") return gaussian(read_vector(params, "center", dim), params.value("width", 1.0)).scaled(amplitude);
  if (family == "polybump") return polybump(read_vector(params, "center", dim), params.value("radius", 1.0)).scaled(amplitude);
  throw InvalidArgument("test function: unknown family '" + family + "'");
}

TestFunction TestFunction::parse(const std::string& text, int dim) {
  const auto colon = text.find(':');
  Json spec{{"family", text.substr(0, colon)}, {"params", Json::object()}};
  if (colon != std::string::npos) {
    std::stringstream items(text.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ';')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidArgument("test function: expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq);
      std::stringstream values(item.substr(eq + 1));
      std::string token;
      Json arr = Json::array();
      while (std::getline(values, token, ',')) {
        try {
          arr.push_back(std::stod(token));
        } catch (const std::exception&) {
          throw InvalidArgument("test function: bad number '" + token + "'");
        }
      }
      const bool vector_key = key == "u" || key == "center";
      if (arr.empty()) throw InvalidArgument("test function: empty value for '" + key + "'");
      spec["params"][key] = (arr.size() > 1 || (vector_key && dim > 1)) ? arr : arr[0];
    }
  }
  return from_json(spec, dim);
}

double TestFunction::value(const Vec& x) const {
  switch (family_) {
    case Family::kConstant:
      return amplitude_;
    case Family::kCosine:
      return amplitude_ * std::cos(center_.dot(x));
    case Family::kGaussian:
      return amplitude_ * std::exp(-(x - center_).squaredNorm() / (2.0 * scale_ * scale_));
    case Family::kPolyBump: {
      const double q = 1.0 - (x - center_).squaredNorm() / (scale_ * scale_);
      return q > 0.0 ? amplitude_ * q * q * q * q : 0.0;
    }
  }
  return 0.0;
}

Vec TestFunction::gradient(const Vec& x) const {
  const int d = dim();
  switch (family_) {
    case Family::kConstant:
      return Vec::Zero(d);
    case Family::kCosine:
      return -amplitude_ * std::sin(center_.dot(x)) * center_;
    case Family::kGaussian: {
      const Vec z = x - center_;
      const double w2 = scale_ * scale_;
      return -amplitude_ * std::exp(-z.squaredNorm() / (2.0 * w2)) / w2 * z;
    }
    case Family::kPolyBump: {
      const Vec z = x - center_;
      const double r2 = scale_ * scale_;
      const double q = 1.0 - z.squaredNorm() / r2;
      if (q <= 0.0) return Vec::Zero(d);
      return -8.0 * amplitude_ * q * q * q / r2 * z;
    }
  }
  return Vec::Zero(d);
}

Mat TestFunction::hessian(const Vec& x) const {
  const int d = dim();
  const Mat eye = Mat::Identity(d, d);
  switch (family_) {
    case Family::kConstant:
      return Mat::Zero(d, d);
    case Family::kCosine:
      return -amplitude_ * std::cos(center_.dot(x)) * (center_ * center_.transpose());
    case Family::kGaussian: {
      const Vec z = x - center_;
      const double w2 = scale_ * scale_;
      const double f = amplitude_ * std::exp(-z.squaredNorm() / (2.0 * w2));
      return f * ((z * z.transpose()) / (w2 * w2) - eye / w2);
    }
    case Family::kPolyBump: {
      const Vec z = x - center_;
      const double r2 = scale_ * scale_;
      const double q = 1.0 - z.squaredNorm() / r2;
      if (q <= 0.0) return Mat::Zero(d, d);
      return amplitude_ * (48.0 * q * q / (r2 * r2) * (z * z.transpose()) - 8.0 * q * q * q / r2 * eye);
    }
  }
  return Mat::Zero(d, d);
}

double TestFunction::support_reach(const Vec& x) const {
  switch (family_) {
    case Family::kGaussian:
      return (x - center_).norm() + kGaussianReach * scale_;
    case Family::kPolyBump:
      return (x - center_).norm() + scale_;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double TestFunction::length_scale() const {
  switch (family_) {
    case Family::kCosine: {
      const double k = center_.norm();
      return k > 0.0 ? 1.0 / k : 1.0;
    }
    case Family::kGaussian:
      return scale_;
    case Family::kPolyBump:
      return 0.25 * scale_;
    default:
      return 1.0;
  }
}

double TestFunction::frequency() const { return family_ == Family::kCosine ? center_.norm() : 0.0; }

Json TestFunction::to_json() const {
  Json params = Json::object();
  switch (family_) {
    case Family::kConstant:
      return {{"family", "constant"}, {"params", {{"value", amplitude_}}}};
    case Family::kCosine:
      params["u"] = vector_json(center_);
      break;
    case Family::kGaussian:
      params["center"] = vector_json(center_);
      params["width"] = scale_;
      break;
    case Family::kPolyBump:
      params["center"] = vector_json(center_);
      params["radius"] = scale_;
      break;
  }
  if (amplitude_ != 1.0) params["amplitude"] = amplitude_;
  static const char* names[] = {"constant", "cosine", "gaussian", "polybump"};
  return {{"family", names[static_cast<int>(family_)]}, {"params", params}};
}

std::string TestFunction::label() const { return to_json().dump(); }

}  // namespace stablelike
