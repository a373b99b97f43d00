// Copyright 2026 The torusmass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/period.hpp"
#include "torusmass/profile.hpp"
#include "torusmass/report_io.hpp"
#include "torusmass/spectral.hpp"
#include "torusmass/verify.hpp"

namespace torusmass::cli {
namespace {

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("torusmass", sink);
  log->set_pattern("[%l] %v");
  log->set_level(spdlog::level::err);
  if (const char* env = std::getenv("LOG_LEVEL")) {
    const std::string level = env;
    if (level == "debug") {
      log->set_level(spdlog::level::debug);
    } else if (level == "info") {
      log->set_level(spdlog::level::info);
    } else if (level != "error") {
      log->warn("ignoring LOG_LEVEL={} (expected error, info or debug)", level);
    }
  }
  return log;
}

struct Flags {
  double a = 0.0;
  double b = 0.0;
  int n = kDefaultSamples;
  std::string out;
  double phi0_min = 0.0;
  double phi0_max = 0.0;
  int steps = 0;
  double tol = 1e-10;
  std::vector<std::string> only;
  double beta = 0.0;
};

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

int cmd_trace_flat(const Flags& f, std::ostream& out, spdlog::logger& log) {
  const SpectralReport r = spectral_report(f.a, f.b);
  log.info("trace-flat a={} b={}", f.a, f.b);
  Json j = Json::object()
               .set("a", r.a)
               .set("b", r.b)
               .set("beta", r.beta)
               .set("trace", r.trace)
               .set("sphere_trace", r.sphere_trace)
               .set("diff", r.diff)
               .set("omega", r.omega);
  if (r.lambda1) j.set("lambda1", *r.lambda1);
  emit(out, j);
  return kExitOk;
}

int cmd_profile(const Flags& f, std::ostream& out, spdlog::logger& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const ProfileSolution sol = solve_profile(f.b, f.n);
  log.info("solved profile b={} in {:.3f}s", f.b,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  log.debug("M grid route {} (difference {})", sol.M_grid, std::abs(sol.M - sol.M_grid));
  const std::string path = f.out.empty() ? "profile.csv" : f.out;
  export_profile(sol, path);
  emit(out, Json::object()
                .set("b", sol.b)
                .set("beta", sol.beta)
                .set("phi0", sol.phi0)
                .set("f0", sol.f0)
                .set("M", mass_M(sol))
                .set("epsilon", sol.epsilon)
                .set("ode_residual", sol.ode_residual)
                .set("n", f.n)
                .set("out", path));
  return kExitOk;
}

int cmd_mass_sweep(const Flags& f, std::ostream& out, spdlog::logger& log) {
  if (!(f.phi0_min > 0.0 && f.phi0_max > f.phi0_min)) {
    throw DomainError(fmt::format("need 0 < phi0-min < phi0-max (got {}, {})", f.phi0_min, f.phi0_max));
  }
  if (f.steps < 2) throw DomainError(fmt::format("need steps >= 2 (got {})", f.steps));
  std::string csv = "phi0,f0,b,beta,M,epsilon,lhs_118\n";
  for (int k = 0; k < f.steps; ++k) {
    const double phi0 = k + 1 == f.steps ? f.phi0_max
                                         : f.phi0_min + (f.phi0_max - f.phi0_min) * k / (f.steps - 1);
    const double excess = excess_of_phi(phi0);
    const double f0 = 1.0 + excess;
    const double beta = beta_of_excess(excess).beta;
    const double m = mass_of_excess(excess);
    const double b2 = beta * beta;
    const double eps = b2 - std::log(4.0 * b2) - f0;
    const double lhs = m + b2 / 3.0 - std::log(4.0 * b2) + 1.0 + omega(beta);
    log.debug("phi0={} beta={} M={}", phi0, beta, m);
    csv += fmt::format("{},{},{},{},{},{},{}\n", format_double(phi0), format_double(f0),
                       format_double(beta / kSqrtPi), format_double(beta), format_double(m),
                       format_double(eps), format_double(lhs));
  }
  if (f.out.empty()) {
    out << csv;
  } else {
    write_file_atomic(f.out, csv);
    log.info("wrote {} rows to {}", f.steps, f.out);
  }
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out, spdlog::logger& log) {
  VerifyConfig cfg = VerifyConfig::defaults();
  cfg.tol = f.tol;
  cfg.n_samples = f.n;
  cfg.only = f.only;
  const auto t0 = std::chrono::steady_clock::now();
  const VerificationReport rep = full_chain(cfg);
  log.info("verification finished in {:.2f}s",
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  for (const auto& c : rep.checks) {
    log.info("{}: {} (margin {}, err {})", c.id, to_string(c.status), c.margin, c.err_estimate);
  }
  const std::string text = to_json(rep).dump() + "\n";
  if (!f.out.empty()) write_file_atomic(f.out, text);
  out << text;
  switch (rep.overall) {
    case Status::kPass: return kExitOk;
    case Status::kFail: return kExitCheckFailed;
    case Status::kInconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int cmd_omega(const Flags& f, std::ostream& out, spdlog::logger&) {
  emit(out, Json::object().set("beta", f.beta).set("omega", omega(f.beta)));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);
  Flags f;
  CLI::App app{"Robin-mass computations on flat and conformal tori", "torusmass"};
  app.require_subcommand(1);

  auto* trace = app.add_subcommand("trace-flat", "Green-function trace of the flat torus (a, b)");
  trace->add_option("--a", f.a, "lattice shear a")->capture_default_str();
  trace->add_option("--b", f.b, "lattice height b >= (3/4)^(1/4)")->required();

  auto* profile = app.add_subcommand("profile", "Periodic profile with period b; CSV plus JSON summary");
  profile->add_option("--b", f.b, "period b > sqrt(pi/2)")->required();
  profile->add_option("--n", f.n, "number of grid intervals")->capture_default_str();
  profile->add_option("--out", f.out, "CSV path (default profile.csv)");

  auto* sweep = app.add_subcommand("mass-sweep", "Mass functional along a range of amplitudes");
  sweep->add_option("--phi0-min", f.phi0_min, "smallest amplitude")->required();
  sweep->add_option("--phi0-max", f.phi0_max, "largest amplitude")->required();
  sweep->add_option("--steps", f.steps, "number of rows (>= 2)")->required();
  sweep->add_option("--out", f.out, "CSV path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Run the inequality checks; exit 0 pass, 1 fail, 3 inconclusive");
  verify->add_option("--tol", f.tol, "quadrature tolerance and error floor")->capture_default_str();
  verify->add_option("--n", f.n, "profile grid intervals")->capture_default_str();
  verify->add_option("--only", f.only, "restrict to these check ids")->delimiter(',');
  verify->add_option("--out", f.out, "also write the JSON report here");

  auto* om = app.add_subcommand("omega", "Tail sum -4 sum log(1 - e^{-2 n beta^2})");
  om->add_option("--beta", f.beta, "beta > 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  try {
    if (trace->parsed()) return cmd_trace_flat(f, out, *log);
    if (profile->parsed()) return cmd_profile(f, out, *log);
    if (sweep->parsed()) return cmd_mass_sweep(f, out, *log);
    if (verify->parsed()) return cmd_verify(f, out, *log);
    if (om->parsed()) return cmd_omega(f, out, *log);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitDomain;
}

}  // namespace torusmass::cli
