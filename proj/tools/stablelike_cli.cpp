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

// Command-line front end. Everything numerical goes through the C API in libstablelike.

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablelike/stablelike.h"

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

/// Carries an exit code out of a subcommand.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(sl_status s) {
  switch (s) {
    case SL_OK: return kExitOk;
    case SL_ERR_CONVERGENCE:
    case SL_ERR_INTERNAL: return kExitNumerical;
    case SL_ERR_MODEL: return kExitValidation;
    default: return kExitUsage;
  }
}

void check(sl_status s) {
  if (s != SL_OK) throw Failure{exit_code_for(s), std::string(sl_status_name(s)) + ": " + sl_last_error()};
}

/// Calls an entry point that writes JSON into a caller buffer, growing the buffer once if needed.
std::string json_call(const std::function<sl_status(char*, size_t, size_t*)>& fn) {
  std::string buf(1 << 16, '\0');
  size_t needed = 0;
  sl_status s = fn(buf.data(), buf.size(), &needed);
  if (s == SL_ERR_BUFFER) {
    buf.assign(needed, '\0');
    s = fn(buf.data(), buf.size(), &needed);
  }
  check(s);
  buf.resize(needed ? needed - 1 : 0);
  return buf;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using ModelHandle = Handle<sl_model, sl_model_free>;
using DensityHandle = Handle<sl_density, sl_density_free>;
using ResolventHandle = Handle<sl_resolvent, sl_resolvent_free>;
using MollifiedHandle = Handle<sl_mollified, sl_mollified_free>;
using FunctionHandle = Handle<sl_function, sl_function_free>;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

/// Writes through a temporary file in the target directory and renames it into place.
void write_atomic(const std::string& path, const std::string& data) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitUsage, "cannot write '" + tmp.string() + "'"};
    out << data;
    out.flush();
    if (!out) throw Failure{kExitUsage, "write to '" + tmp.string() + "' failed"};
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Failure{kExitUsage, "cannot move output into '" + path + "': " + ec.message()};
  }
}

/// Collects outputs and the resolved configuration of one run.
class Run {
 public:
  explicit Run(std::string subcommand) : subcommand_(std::move(subcommand)), start_(std::chrono::steady_clock::now()) {}
  Json config = Json::object();
  std::uint64_t seed = 0;
  bool has_seed = false;

  /// Writes to `path`, or stdout when it is empty or "-".
  void output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
      std::cout << data;
      outputs_.push_back({{"path", "-"}, {"sha256", sha256_hex(data)}});
      return;
    }
    write_atomic(path, data);
    outputs_.push_back({{"path", path}, {"sha256", sha256_hex(data)}});
    if (manifest_path_.empty()) manifest_path_ = path + ".manifest.json";
  }

  void finish(int exit_code) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    Json m{{"subcommand", subcommand_}, {"tool_version", sl_version()}, {"config", config},
           {"seed", has_seed ? Json(seed) : Json(nullptr)}, {"threads", sl_get_threads()},
           {"wall_time_s", wall}, {"exit_code", exit_code}, {"outputs", outputs_}};
    const std::string text = m.dump(2) + "\n";
    if (manifest_path_.empty()) {
      std::cerr << text;
    } else {
      write_atomic(manifest_path_, text);
    }
  }

 private:
  std::string subcommand_;
  std::chrono::steady_clock::time_point start_;
  Json outputs_ = Json::array();
  std::string manifest_path_;
};

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0.0)) throw Failure{kExitUsage, std::string(name) + " must be a positive number"};
  return x;
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long x = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || x < 0) throw Failure{kExitUsage, std::string(name) + " must be a nonnegative integer"};
  return static_cast<int>(x);
}

void load_model(const std::string& path, ModelHandle& model, Run& run) {
  if (!fs::exists(path)) throw Failure{kExitUsage, "config file '" + path + "' not found"};
  check(sl_model_load(path.c_str(), model.out()));
  run.config["model_file"] = path;
  run.config["model"] = Json::parse(json_call([&](char* b, size_t c, size_t* n) { return sl_model_to_json(model.get(), b, c, n); }));
}

std::vector<double> point_or_origin(const std::vector<double>& v, int dim, const char* name) {
  if (v.empty()) return std::vector<double>(static_cast<std::size_t>(dim), 0.0);
  if (static_cast<int>(v.size()) == 1 && dim > 1) return std::vector<double>(static_cast<std::size_t>(dim), v[0]);
  if (static_cast<int>(v.size()) != dim) throw Failure{kExitUsage, std::string(name) + " needs " + std::to_string(dim) + " coordinates"};
  return v;
}

std::vector<double> grid(double lo, double hi, int points, bool log_spaced) {
  if (points < 2 || !(hi > lo)) throw Failure{kExitUsage, "grid needs points >= 2 and max > min"};
  if (log_spaced && !(lo > 0.0)) throw Failure{kExitUsage, "a log grid needs a positive minimum"};
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / (points - 1);
    out.push_back(log_spaced ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct PlanOptions {
  std::vector<double> x0;
  double horizon = 1.0;
  double rho = 1e-3;
  std::int64_t paths = 1000;
  std::uint64_t seed = 1;
  double max_step = 0.0;
  std::vector<double> box_lo, box_hi;

  void add(CLI::App* sub) {
    sub->add_option("--x0", x0, "Start point (comma separated)")->delimiter(',');
    sub->add_option("--T", horizon, "Horizon")->capture_default_str();
    sub->add_option("--rho", rho, "Small-jump truncation radius")->capture_default_str();
    sub->add_option("--paths", paths, "Number of paths")->capture_default_str();
    sub->add_option("--seed", seed, "Master seed")->capture_default_str();
    sub->add_option("--max-step", max_step, "Coefficient refresh interval (0: min(0.01, rho^alpha_low/10))")->capture_default_str();
    sub->add_option("--box-lo", box_lo, "Stopping box lower corner")->delimiter(',');
    sub->add_option("--box-hi", box_hi, "Stopping box upper corner")->delimiter(',');
  }

  Json to_json(int dim) const {
    Json j{{"x0", point_or_origin(x0, dim, "--x0")}, {"horizon", horizon}, {"rho", rho},
           {"paths", paths}, {"seed", seed}, {"max_step", max_step}};
    if (!box_lo.empty() || !box_hi.empty()) {
      j["box_lo"] = point_or_origin(box_lo, dim, "--box-lo");
      j["box_hi"] = point_or_origin(box_hi, dim, "--box-hi");
    }
    return j;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stablelike: stable-like processes with variable order, densities, resolvents and Monte Carlo checks"};
  app.footer(
      "Environment:\n"
      "  SL_THREADS    default worker cap (overridden by --threads); results do not depend on it\n"
      "  SL_TOLERANCE  default relative tolerance of generator quadrature (1e-10 for generator-apply,\n"
      "                1e-8 for perturbation-scan and martingale-test)\n"
      "Exit codes: 0 success, 1 validation failure, 2 numerical non-convergence, 64 usage error.");
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "Worker cap (0: hardware concurrency)");

  std::function<int(Run&)> action;
  std::string name;
  auto sub = [&](const char* n, const char* help) {
    auto* s = app.add_subcommand(n, help);
    s->callback([&, n] { name = n; });
    return s;
  };

  // coeffs
  int c_dim = 1, c_kmax = 10;
  double c_alpha = 1.0;
  std::string c_out;
  auto* coeffs = sub("coeffs", "Tail-series coefficients a_k as CSV (k, a_k)");
  coeffs->add_option("--dim", c_dim)->required();
  coeffs->add_option("--alpha", c_alpha)->required();
  coeffs->add_option("--k-max", c_kmax)->capture_default_str();
  coeffs->add_option("--out", c_out, "Output CSV (default stdout)");

  // density-table
  int d_dim = 1, d_points = 100;
  double d_alpha = 1.0, d_t = 1.0, d_rmin = 0.0, d_rmax = 10.0;
  bool d_log = false;
  std::string d_out;
  auto* dens = sub("density-table", "Radial density table as CSV (r, density, gradient_norm, method)");
  dens->add_option("--dim", d_dim)->required();
  dens->add_option("--alpha", d_alpha)->required();
  dens->add_option("--t", d_t)->capture_default_str();
  dens->add_option("--r-min", d_rmin)->capture_default_str();
  dens->add_option("--r-max", d_rmax)->capture_default_str();
  dens->add_option("--points", d_points)->capture_default_str();
  dens->add_flag("--log", d_log, "Log-spaced radii");
  dens->add_option("--out", d_out);

  // resolvent
  int r_dim = 1, r_points = 100;
  double r_alpha = 1.5, r_lambda = 1.0, r_eps = 0.0, r_xi = 1.0, r_rmin = 1e-3, r_rmax = 1e2;
  std::string r_grid = "log", r_out, r_witness;
  auto* res = sub("resolvent", "Resolvent kernel (and its mollification) on a radial grid as CSV");
  res->add_option("--dim", r_dim)->required();
  res->add_option("--alpha", r_alpha)->required();
  res->add_option("--lambda", r_lambda)->capture_default_str();
  res->add_option("--eps", r_eps, "Mollifier scale; 0 skips the mollified columns")->capture_default_str();
  res->add_option("--xi", r_xi, "Time-change weight of the mollified kernel")->capture_default_str();
  res->add_option("--r-min", r_rmin)->capture_default_str();
  res->add_option("--r-max", r_rmax)->capture_default_str();
  res->add_option("--points", r_points)->capture_default_str();
  res->add_option("--grid", r_grid, "log or linear")->check(CLI::IsMember({"log", "linear"}))->capture_default_str();
  res->add_option("--out", r_out);
  res->add_option("--witness-out", r_witness, "Bound witnesses of the mollified kernel as JSON (needs --eps)");

  // generator-apply
  std::string g_config, g_variant = "full", g_f, g_out;
  std::vector<double> g_x, g_z, g_y;
  double g_tol = 0.0;
  auto* gen = sub("generator-apply", "Apply the jump generator to a test function at a point");
  gen->add_option("--config", g_config)->required();
  gen->add_option("--variant", g_variant)->check(CLI::IsMember({"full", "frozen", "mixed"}))->capture_default_str();
  gen->add_option("--f", g_f, "Test function, family:key=v;...")->required();
  gen->add_option("--x", g_x)->delimiter(',');
  gen->add_option("--z", g_z, "Freeze point (frozen, mixed)")->delimiter(',');
  gen->add_option("--y", g_y, "Weight point (mixed)")->delimiter(',');
  gen->add_option("--tolerance", g_tol);
  gen->add_option("--out", g_out);

  // perturbation-scan
  std::string p_config, p_f, p_out;
  std::vector<double> p_x;
  double p_eps = 0.1, p_lmin = 1.0, p_lmax = 1e6, p_tol = 0.0;
  int p_points = 9;
  auto* pert = sub("perturbation-scan", "J-term contraction scan over a geometric lambda grid");
  pert->add_option("--config", p_config)->required();
  pert->add_option("--eps", p_eps)->capture_default_str();
  pert->add_option("--lambda-min", p_lmin)->capture_default_str();
  pert->add_option("--lambda-max", p_lmax)->capture_default_str();
  pert->add_option("--points", p_points)->capture_default_str();
  pert->add_option("--f", p_f, "Test function g (default: unit polybump at x)");
  pert->add_option("--x", p_x, "Witness point (default origin)")->delimiter(',');
  pert->add_option("--tolerance", p_tol);
  pert->add_option("--out", p_out);

  // simulate
  std::string s_config, s_out;
  PlanOptions s_plan;
  auto* sim = sub("simulate", "Simulate paths; CSV (path_id, t, x1..xd, event)");
  sim->add_option("--config", s_config)->required();
  s_plan.add(sim);
  sim->add_option("--out", s_out);

  // martingale-test
  std::string m_config, m_out;
  PlanOptions m_plan;
  std::vector<std::string> m_fs;
  std::vector<double> m_times{0.25, 0.5, 1.0};
  double m_tol = 0.0, m_lambda = 0.0;
  auto* mart = sub("martingale-test", "Martingale residuals (and optionally the resolvent identity) by Monte Carlo");
  mart->add_option("--config", m_config)->required();
  m_plan.add(mart);
  mart->add_option("--f", m_fs, "Test function (repeatable)")->required();
  mart->add_option("--times", m_times, "Observation times")->delimiter(',')->capture_default_str();
  mart->add_option("--tolerance", m_tol);
  mart->add_option("--lambda", m_lambda, "Also check the resolvent identity at this lambda for each function");
  mart->add_option("--out", m_out);

  // verify
  std::string v_config, v_plan, v_out;
  double v_lambda = 10.0, v_eps = 0.1;
  std::vector<double> v_x, v_y;
  auto* ver = sub("verify", "Assumption suite and perturbation bound witnesses for a model");
  ver->add_option("--config", v_config)->required();
  ver->add_option("--plan", v_plan, "Sampling plan JSON file");
  ver->add_option("--lambda", v_lambda)->capture_default_str();
  ver->add_option("--eps", v_eps)->capture_default_str();
  ver->add_option("--x", v_x, "Witness point x (default origin)")->delimiter(',');
  ver->add_option("--y", v_y, "Witness point y (default x + 0.05 e1)")->delimiter(',');
  ver->add_option("--out", v_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Run run(name);
  int code = kExitOk;
  try {
    sl_set_threads(threads >= 0 ? threads : env_int("SL_THREADS", 0));

    if (name == "coeffs") {
      run.config = {{"dim", c_dim}, {"alpha", c_alpha}, {"k_max", c_kmax}};
      std::vector<double> a(static_cast<std::size_t>(std::max(c_kmax, 0)));
      check(sl_series_coefficients(c_dim, c_alpha, c_kmax, a.data()));
      std::ostringstream os;
      os << "k,a_k\n";
      for (int k = 1; k <= c_kmax; ++k) os << k << ',' << fmt(a[k - 1]) << '\n';
      run.output(c_out, os.str());

    } else if (name == "density-table") {
      run.config = {{"dim", d_dim}, {"alpha", d_alpha}, {"t", d_t}, {"r_min", d_rmin}, {"r_max", d_rmax},
                    {"points", d_points}, {"log", d_log}};
      DensityHandle dh;
      check(sl_density_create(d_dim, d_alpha, 0.0, dh.out()));
      std::ostringstream os;
      os << "r,density,gradient_norm,method\n";
      std::vector<double> x(static_cast<std::size_t>(d_dim), 0.0), g(static_cast<std::size_t>(d_dim));
      for (double r : grid(d_rmin, d_rmax, d_points, d_log)) {
        x[0] = r;
        double p = 0.0;
        int series = 0;
        check(sl_density_eval(dh.get(), d_t, x.data(), &p));
        check(sl_density_gradient(dh.get(), d_t, x.data(), g.data()));
        check(sl_density_method(dh.get(), d_t, r, &series));
        double gn = 0.0;
        for (double v : g) gn += v * v;
        os << fmt(r) << ',' << fmt(p) << ',' << fmt(std::sqrt(gn)) << ',' << (series ? "series" : "inversion") << '\n';
      }
      run.output(d_out, os.str());

    } else if (name == "resolvent") {
      run.config = {{"dim", r_dim}, {"alpha", r_alpha}, {"lambda", r_lambda}, {"eps", r_eps}, {"xi", r_xi},
                    {"r_min", r_rmin}, {"r_max", r_rmax}, {"points", r_points}, {"grid", r_grid}};
      ResolventHandle rh;
      check(sl_resolvent_create(r_dim, r_alpha, rh.out()));
      MollifiedHandle mh;
      if (r_eps > 0.0) check(sl_mollified_create(rh.get(), r_lambda, r_eps, r_xi, r_dim == 1, mh.out()));
      else if (!r_witness.empty()) throw Failure{kExitUsage, "--witness-out needs --eps > 0"};
      std::ostringstream os;
      os << "r,resolvent";
      if (mh.get()) os << ",mollified,mollified_d1,mollified_d2";
      os << '\n';
      for (double r : grid(r_rmin, r_rmax, r_points, r_grid == "log")) {
        double v = 0.0;
        check(sl_resolvent_value(rh.get(), r_lambda, r, &v));
        os << fmt(r) << ',' << fmt(v);
        if (mh.get()) {
          double jet[3];
          check(sl_mollified_radial(mh.get(), r, jet));
          os << ',' << fmt(jet[0]) << ',' << fmt(jet[1]) << ',' << fmt(jet[2]);
        }
        os << '\n';
      }
      run.output(r_out, os.str());
      if (!r_witness.empty()) {
        int passed = 0;
        const auto text = json_call([&](char* b, size_t c, size_t* n) {
          return sl_mollified_witnesses(mh.get(), 1e-2, 1e2, 41, &passed, b, c, n);
        });
        run.output(r_witness, Json::parse(text).dump(2) + "\n");
        if (!passed) code = kExitValidation;
      }

    } else if (name == "generator-apply") {
      ModelHandle mh;
      load_model(g_config, mh, run);
      const int d = sl_model_dim(mh.get());
      const double tol = g_tol > 0.0 ? g_tol : env_double("SL_TOLERANCE", 1e-10);
      FunctionHandle fh;
      check(sl_function_parse(g_f.c_str(), d, fh.out()));
      const auto x = point_or_origin(g_x, d, "--x");
      const auto z = point_or_origin(g_z.empty() ? x : g_z, d, "--z");
      const auto y = point_or_origin(g_y.empty() ? x : g_y, d, "--y");
      run.config.update({{"variant", g_variant}, {"f", g_f}, {"x", x}, {"z", z}, {"y", y}, {"tolerance", tol}});
      double value = 0.0;
      const auto text = json_call([&](char* b, size_t c, size_t* n) {
        return sl_generator_apply(mh.get(), g_variant.c_str(), z.data(), y.data(), fh.get(), x.data(), tol, &value, b, c, n);
      });
      run.output(g_out, Json::parse(text).dump(2) + "\n");

    } else if (name == "perturbation-scan") {
      ModelHandle mh;
      load_model(p_config, mh, run);
      const int d = sl_model_dim(mh.get());
      const auto x = point_or_origin(p_x, d, "--x");
      std::string f = p_f;
      if (f.empty()) {
        std::ostringstream os;
        os << "polybump:center=";
        for (int i = 0; i < d; ++i) os << (i ? "," : "") << fmt(x[i]);
        os << ";radius=1";
        f = os.str();
      }
      const double tol = p_tol > 0.0 ? p_tol : env_double("SL_TOLERANCE", 1e-8);
      run.config.update({{"eps", p_eps}, {"lambda_min", p_lmin}, {"lambda_max", p_lmax}, {"points", p_points},
                         {"f", f}, {"x", x}, {"tolerance", tol}});
      FunctionHandle fh;
      check(sl_function_parse(f.c_str(), d, fh.out()));
      int success = 0;
      const auto text = json_call([&](char* b, size_t c, size_t* n) {
        return sl_perturbation_scan(mh.get(), fh.get(), x.data(), p_eps, p_lmin, p_lmax, p_points, tol, &success, b, c, n);
      });
      run.output(p_out, Json::parse(text).dump(2) + "\n");

    } else if (name == "simulate") {
      ModelHandle mh;
      load_model(s_config, mh, run);
      const int d = sl_model_dim(mh.get());
      const Json plan = s_plan.to_json(d);
      run.config["plan"] = plan;
      run.seed = s_plan.seed;
      run.has_seed = true;
      std::ostringstream os;
      os << "path_id,t";
      for (int i = 1; i <= d; ++i) os << ",x" << i;
      os << ",event\n";
      struct Sink {
        std::ostringstream* os;
      } sink{&os};
      auto cb = [](void* user, int64_t path, double t, const double* x, int dim, const char* event) {
        auto& o = *static_cast<Sink*>(user)->os;
        o << path << ',' << fmt(t);
        for (int i = 0; i < dim; ++i) o << ',' << fmt(x[i]);
        o << ',' << event << '\n';
      };
      const std::string plan_text = plan.dump();
      const auto text = json_call([&](char* b, size_t c, size_t* n) {
        std::ostringstream().swap(os);
        os << "path_id,t";
        for (int i = 1; i <= d; ++i) os << ",x" << i;
        os << ",event\n";
        return sl_simulate(mh.get(), plan_text.c_str(), cb, &sink, b, c, n);
      });
      run.config["diagnostics"] = Json::parse(text)["diagnostics"];
      run.output(s_out, os.str());

    } else if (name == "martingale-test") {
      ModelHandle mh;
      load_model(m_config, mh, run);
      const int d = sl_model_dim(mh.get());
      const Json plan = m_plan.to_json(d);
      const double tol = m_tol > 0.0 ? m_tol : env_double("SL_TOLERANCE", 1e-8);
      run.config.update({{"plan", plan}, {"functions", m_fs}, {"times", m_times}, {"tolerance", tol}});
      run.seed = m_plan.seed;
      run.has_seed = true;
      const std::string plan_text = plan.dump();
      const std::string fs_text = Json(m_fs).dump();
      int passed = 0;
      const auto text = json_call([&](char* b, size_t c, size_t* n) {
        return sl_martingale_test(mh.get(), plan_text.c_str(), fs_text.c_str(), m_times.data(),
                                  static_cast<int>(m_times.size()), tol, &passed, b, c, n);
      });
      Json report = Json::parse(text);
      bool ok = passed != 0;
      if (m_lambda > 0.0) {
        run.config["lambda"] = m_lambda;
        Json ident = Json::array();
        for (const auto& f : m_fs) {
          FunctionHandle fh;
          check(sl_function_parse(f.c_str(), d, fh.out()));
          int p = 0;
          ident.push_back(Json::parse(json_call([&](char* b, size_t c, size_t* n) {
            return sl_resolvent_identity(mh.get(), plan_text.c_str(), m_lambda, fh.get(), 1e-3, &p, b, c, n);
          })));
          ok = ok && p;
        }
        report["resolvent_identity"] = ident;
        report["pass"] = ok;
      }
      run.output(m_out, report.dump(2) + "\n");
      if (!ok) code = kExitValidation;

    } else if (name == "verify") {
      ModelHandle mh;
      load_model(v_config, mh, run);
      const int d = sl_model_dim(mh.get());
      std::string plan_text;
      if (!v_plan.empty()) {
        if (!fs::exists(v_plan)) throw Failure{kExitUsage, "plan file '" + v_plan + "' not found"};
        std::ifstream in(v_plan);
        plan_text.assign(std::istreambuf_iterator<char>(in), {});
        run.config["plan"] = Json::parse(plan_text);
      }
      const auto x = point_or_origin(v_x, d, "--x");
      auto y = x;
      y[0] += 0.05;
      if (!v_y.empty()) y = point_or_origin(v_y, d, "--y");
      run.config.update({{"lambda", v_lambda}, {"eps", v_eps}, {"x", x}, {"y", y}});
      int assumptions_ok = 0, witnesses_ok = 0;
      const auto assumptions = json_call([&](char* b, size_t c, size_t* n) {
        return sl_model_validate(mh.get(), plan_text.empty() ? nullptr : plan_text.c_str(), &assumptions_ok, b, c, n);
      });
      const auto witnesses = json_call([&](char* b, size_t c, size_t* n) {
        return sl_perturbation_witnesses(mh.get(), v_lambda, v_eps, x.data(), y.data(), &witnesses_ok, b, c, n);
      });
      Json report{{"assumptions", Json::parse(assumptions)},
                  {"witnesses", Json::parse(witnesses)},
                  {"pass", assumptions_ok && witnesses_ok}};
      run.output(v_out, report.dump(2) + "\n");
      if (!(assumptions_ok && witnesses_ok)) code = kExitValidation;
    }
  } catch (const Failure& f) {
    std::cerr << "stablelike " << name << ": " << f.message << "\n";
    if (f.code == kExitUsage) std::cerr << "\n" << app.get_subcommand(name)->help();
    code = f.code;
  } catch (const std::exception& e) {
    std::cerr << "stablelike " << name << ": " << e.what() << "\n";
    code = kExitNumerical;
  }
  try {
    run.finish(code);
  } catch (const Failure& f) {
    std::cerr << "stablelike: " << f.message << "\n";
    if (code == kExitOk) code = f.code;
  }
  return code;
}
