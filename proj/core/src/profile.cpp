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

#include "torusmass/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/period.hpp"
#include "torusmass/quadrature.hpp"
#include "torusmass/report_io.hpp"

namespace torusmass {
namespace {

constexpr double kFourSqrtPi = 4.0 * kSqrtPi;

double integrate(const auto& g, double lo, double hi) {
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  opt.max_level = 10;
  const auto res = quad::tanh_sinh([&](const quad::Node& n) { return g(n.x); }, lo, hi, opt);
  if (!res.converged && res.err_estimate > 1e-11 * std::abs(res.value)) {
    throw PrecisionError(fmt::format("profile quadrature stalled (err {} on [{}, {}])", res.err_estimate, lo, hi));
  }
  return res.value;
}

// The orbit f(phi) + phi'^2/(16 pi) = f0, split at the midpoint of
// [phi_*, phi0]. On each half phi is written as phi0 - w^2 or phi_* + w^2,
// which turns dphi / sqrt(f0 - f(phi)) into a smooth density in w.
class Orbit {
 public:
  explicit Orbit(double excess) : excess_(excess) {
    const BranchPair bp = branch_pair_from_excess(excess);
    if (!(bp.phi_high > 0.0 && bp.phi_low < 0.0)) {
      throw PrecisionError(fmt::format("amplitude f0 - 1 = {} is below the resolvable range", excess));
    }
    phi0_ = bp.phi_high;
    phi_low_ = bp.phi_low;
    h_low_ = bp.h_low;
    e0_ = std::expm1(phi0_);
    one_minus_h_low_ = -std::expm1(phi_low_);
    const double mid = 0.5 * (phi0_ + phi_low_);
    w_top_ = std::sqrt(phi0_ - mid);
    w_bot_ = std::sqrt(mid - phi_low_);
  }

  double phi0() const { return phi0_; }
  double phi_low() const { return phi_low_; }
  double w_top() const { return w_top_; }
  double w_bot() const { return w_bot_; }
  double phi_top(double w) const { return phi0_ - w * w; }
  double phi_bot(double w) const { return phi_low_ + w * w; }

  // dphi / sqrt(f0 - f(phi)) per unit w on each half.
  double density_top(double w) const { return 2.0 / std::sqrt(top_ratio(w * w)); }
  double density_bot(double w) const { return 2.0 / std::sqrt(bot_ratio(w * w)); }

  // int g(phi) dphi / sqrt(f0 - f(phi)) over [phi_*, phi0].
  template <typename G>
  double orbit_integral(G&& g) const {
    const double top = integrate([&](double w) { return g(phi_top(w)) * density_top(w); }, 0.0, w_top_);
    const double bot = integrate([&](double w) { return g(phi_bot(w)) * density_bot(w); }, 0.0, w_bot_);
    return top + bot;
  }

 private:
  // (f0 - f(phi0 - x)) / x
  double top_ratio(double x) const {
    if (x == 0.0) return e0_;
    return (e0_ * -std::expm1(-x) - excess_of_phi(-x)) / x;
  }
  // (f0 - f(phi_* + y)) / y
  double bot_ratio(double y) const {
    if (y == 0.0) return one_minus_h_low_;
    if (y > 1.0) return (y - std::exp(phi_low_ + y) + h_low_) / y;
    return one_minus_h_low_ - h_low_ * excess_of_phi(y) / y;
  }

  double excess_;
  double phi0_ = 0.0;
  double phi_low_ = 0.0;
  double h_low_ = 1.0;
  double e0_ = 0.0;
  double one_minus_h_low_ = 0.0;
  double w_top_ = 0.0;
  double w_bot_ = 0.0;
};

// Inverts A(w) = int_0^w density(s) ds for an increasing sequence of targets,
// integrating only from the previous solution each time.
template <typename D>
class Inverter {
 public:
  Inverter(D density, double w_max) : density_(density), w_max_(w_max) {}

  double solve(double target) {
    double w = std::min(w_max_, w_a_ + (target - a_a_) / density_(w_a_));
    double lo = w_a_;
    double hi = w_max_;
    double value = a_a_;
    for (int it = 0; it < 60; ++it) {
      value = a_a_ + integrate(density_, w_a_, w);
      const double r = value - target;
      if (r > 0.0) hi = w; else lo = w;
      if (std::abs(r) <= 2e-16 * std::max(1.0, target)) break;
      double next = w - r / density_(w);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - w) <= 1e-16 * w_max_) {
        w = next;
        value = a_a_ + integrate(density_, w_a_, w);
        break;
      }
      w = next;
    }
    w_a_ = w;
    a_a_ = value;
    return w;
  }

 private:
  D density_;
  double w_max_;
  double w_a_ = 0.0;
  double a_a_ = 0.0;
};

ProfileSolution build_profile(double excess, double beta, int n) {
  if (n < kMinSamples) throw DomainError(fmt::format("n_samples must be >= {} (got {})", kMinSamples, n));
  const Orbit orbit(excess);
  ProfileSolution sol;
  sol.beta = beta;
  sol.b = beta / kSqrtPi;
  sol.f0_excess = excess;
  sol.f0 = 1.0 + excess;
  sol.phi0 = orbit.phi0();
  sol.phi_low = orbit.phi_low();

  const double total_top = integrate([&](double w) { return orbit.density_top(w); }, 0.0, orbit.w_top());
  const double total_bot = integrate([&](double w) { return orbit.density_bot(w); }, 0.0, orbit.w_bot());
  const double total = total_top + total_bot;  // = 2 beta

  const double dy = sol.b / n;
  const int half = n / 2;
  std::vector<double> phi(n + 1, 0.0);
  phi[0] = orbit.phi0();

  // Near half: y -> arc length from phi0.
  Inverter top([&](double w) { return orbit.density_top(w); }, orbit.w_top());
  int i = 1;
  for (; i <= half; ++i) {
    const double target = kFourSqrtPi * (i * dy);
    if (target > total_top) break;
    const double w = top.solve(target);
    phi[i] = orbit.phi_top(w);
  }
  // Far half, walked back from y = b/2 so the targets increase.
  Inverter bot([&](double w) { return orbit.density_bot(w); }, orbit.w_bot());
  for (int k = half; k >= i; --k) {
    if (2 * k == n) {
      phi[k] = orbit.phi_low();
      continue;
    }
    const double target = std::max(0.0, total - kFourSqrtPi * (k * dy));
    const double w = bot.solve(target);
    phi[k] = orbit.phi_bot(w);
  }
  for (int k = half + 1; k <= n; ++k) phi[k] = phi[n - k];

  sol.samples.resize(n + 1);
  for (int k = 0; k <= n; ++k) sol.samples[k] = {k * dy, phi[k]};
  sol.samples[n].y = sol.b;

  sol.M = orbit.orbit_integral([](double p) { return p * (1.0 + std::exp(p)); }) / (2.0 * total);
  sol.M_grid = mass_from_samples(sol.samples);
  sol.epsilon = epsilon_of(sol);

  // Periodic five-point second difference against 8 pi (1 - e^phi).
  double worst = 0.0;
  quad::KahanSum area;
  for (int k = 0; k < n; ++k) {
    const auto at = [&](int j) { return phi[((j % n) + n) % n]; };
    const double d2 = (-at(k - 2) + 16.0 * at(k - 1) - 30.0 * at(k) + 16.0 * at(k + 1) - at(k + 2)) / (12.0 * dy * dy);
    worst = std::max(worst, std::abs(d2 + 8.0 * kPi * std::expm1(phi[k])));
    area.add(std::expm1(phi[k]));
  }
  sol.ode_residual = worst / (8.0 * kPi * std::exp(sol.phi0));
  sol.area_defect = std::abs(area.value()) / n;
  return sol;
}

}  // namespace

double excess_for_beta(double beta) {
  if (!(beta > kBetaMin)) {
    throw DomainError(fmt::format("no nontrivial periodic solution: beta = {} <= pi/sqrt(2)", beta));
  }
  const double gap = beta - kBetaMin;
  double lo = gap * gap;  // beta <= pi/sqrt(2) + sqrt(f0 - 1)
  double hi = std::max(beta * beta - 1.0, 2.0 * lo);
  if (1.0 + lo > kMaxF0) throw DomainError(fmt::format("beta = {} exceeds the supported amplitude range", beta));
  hi = std::min(hi, kMaxF0 - 1.0);
  if (beta_of_excess(hi).beta < beta) {
    throw DomainError(fmt::format("beta = {} exceeds the supported amplitude range", beta));
  }
  while (hi - lo > 1e-12 * std::min(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (beta_of_excess(mid).beta < beta) lo = mid; else hi = mid;
  }
  double d = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {
    const double r = beta_of_excess(d).beta - beta;
    const double step = r / dbeta_dexcess(d);
    if (std::isfinite(step) && d - step > 0.0) d -= step;
  }
  const double resid = std::abs(beta_of_excess(d).beta - beta);
  if (!(resid <= 1e-11 * beta)) {
    throw PrecisionError(fmt::format("amplitude search for beta = {} left residual {}", beta, resid));
  }
  return d;
}

ProfileSolution solve_profile(double b, int n_samples) {
  if (!(b > kPeriodMin)) {
    throw DomainError(fmt::format("no nontrivial periodic solution: b = {} <= sqrt(pi/2)", b));
  }
  if (n_samples < kMinSamples) {
    throw DomainError(fmt::format("n_samples must be >= {} (got {})", kMinSamples, n_samples));
  }
  const double beta = kSqrtPi * b;
  ProfileSolution sol = build_profile(excess_for_beta(beta), beta, n_samples);
  sol.b = b;
  sol.samples.back().y = b;
  return sol;
}

ProfileSolution solve_profile_from_excess(double excess, int n_samples) {
  return build_profile(excess, beta_of_excess(excess).beta, n_samples);
}

double mass_of_excess(double excess) {
  const Orbit orbit(excess);
  const double two_beta = orbit.orbit_integral([](double) { return 1.0; });
  return orbit.orbit_integral([](double p) { return p * (1.0 + std::exp(p)); }) / (2.0 * two_beta);
}

double mass_M(const ProfileSolution& sol) {
  const double diff = std::abs(sol.M - sol.M_grid);
  if (!(diff <= 1e-4)) {
    throw PrecisionError(fmt::format("mass routes disagree by {} (phi-integral {}, grid {})", diff, sol.M, sol.M_grid));
  }
  return sol.M;
}

double mass_from_samples(const std::vector<ProfileSample>& samples) {
  if (samples.size() < 3) throw DomainError("mass_from_samples: need at least 3 samples");
  const std::size_t n = samples.size() - 1;
  quad::KahanSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(samples[i].phi * (1.0 + std::exp(samples[i].phi)));
  return s.value() / (2.0 * static_cast<double>(n));
}

double epsilon_of(const ProfileSolution& sol) {
  return sol.beta * sol.beta - std::log(4.0 * sol.beta * sol.beta) - sol.f0;
}

IdentityPair dM_dbeta_identity(const ProfileSolution& sol) {
  const std::size_t n = sol.samples.size() - 1;
  quad::KahanSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = sol.samples[i].phi;
    s.add(p * (3.0 - std::exp(p)));
  }
  return {s.value() / (2.0 * static_cast<double>(n)), -sol.f0_excess};
}

void export_profile(const ProfileSolution& sol, const std::filesystem::path& path) {
  std::string out = "y,phi,h\n";
  out.reserve(64 * sol.samples.size());
  for (const auto& s : sol.samples) {
    out += fmt::format("{},{},{}\n", format_double(s.y), format_double(s.phi), format_double(std::exp(s.phi)));
  }
  write_file_atomic(path, out);
}

std::vector<ProfileSample> import_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != "y,phi,h") {
    throw IoError(fmt::format("{}: expected header y,phi,h", path.string()));
  }
  std::vector<ProfileSample> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string y, phi, h;
    if (!std::getline(ss, y, ',') || !std::getline(ss, phi, ',') || !std::getline(ss, h)) {
      throw IoError(fmt::format("{}:{}: expected three columns", path.string(), row));
    }
    try {
      out.push_back({std::stod(y), std::stod(phi)});
    } catch (const std::exception&) {
      throw IoError(fmt::format("{}:{}: malformed number", path.string(), row));
    }
  }
  return out;
}

}  // namespace torusmass
