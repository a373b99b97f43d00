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

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

#include <fmt/format.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/profile.hpp"

namespace torusmass {
namespace {

constexpr double kEightPi = 8.0 * kPi;

struct State {
  double phi;
  double dphi;
};

State rhs(const State& s) { return {s.dphi, -kEightPi * std::expm1(s.phi)}; }

State axpy(const State& s, double h, std::initializer_list<std::pair<double, State>> terms) {
  State out = s;
  for (const auto& [c, k] : terms) {
    out.phi += h * c * k.phi;
    out.dphi += h * c * k.dphi;
  }
  return out;
}

struct Step {
  State y;
  State err;
};

// One Dormand-Prince 5(4) step.
Step dp_step(const State& y, double h) {
  const State k1 = rhs(y);
  const State k2 = rhs(axpy(y, h, {{1.0 / 5, k1}}));
  const State k3 = rhs(axpy(y, h, {{3.0 / 40, k1}, {9.0 / 40, k2}}));
  const State k4 = rhs(axpy(y, h, {{44.0 / 45, k1}, {-56.0 / 15, k2}, {32.0 / 9, k3}}));
  const State k5 = rhs(axpy(y, h, {{19372.0 / 6561, k1}, {-25360.0 / 2187, k2}, {64448.0 / 6561, k3},
                                   {-212.0 / 729, k4}}));
  const State k6 = rhs(axpy(y, h, {{9017.0 / 3168, k1}, {-355.0 / 33, k2}, {46732.0 / 5247, k3},
                                   {49.0 / 176, k4}, {-5103.0 / 18656, k5}}));
  const State y5 = axpy(y, h, {{35.0 / 384, k1}, {500.0 / 1113, k3}, {125.0 / 192, k4},
                               {-2187.0 / 6784, k5}, {11.0 / 84, k6}});
  const State k7 = rhs(y5);
  // Difference between the 5th and embedded 4th order solutions.
  const State err = axpy({0.0, 0.0}, h, {{71.0 / 57600, k1}, {-71.0 / 16695, k3}, {71.0 / 1920, k4},
                                         {-17253.0 / 339200, k5}, {22.0 / 525, k6}, {-1.0 / 40, k7}});
  return {y5, err};
}

}  // namespace

RkResult rk_oracle(double phi0, double step_tol) {
  if (!(phi0 > 0.0 && phi0 <= 50.0)) {
    throw DomainError(fmt::format("rk_oracle: phi0 must lie in (0, 50] (got {})", phi0));
  }
  if (!(step_tol > 0.0 && step_tol < 1.0)) {
    throw DomainError(fmt::format("rk_oracle: step_tol must lie in (0, 1) (got {})", step_tol));
  }
  const double f0 = f_of_phi(phi0);
  const double energy_scale = std::max(1.0, f0);
  const auto drift = [&](const State& s) {
    // E - f0 = phi'^2/(16 pi) + f(phi) - f(phi0), formed without the large f0.
    return std::abs(s.dphi * s.dphi / (16.0 * kPi) + (f_of_phi(s.phi) - f0)) / energy_scale;
  };

  // Local error control is kept well below step_tol so the accumulated energy
  // drift over a half period stays within it.
  const double rtol = step_tol * 1e-2;
  const double phi_scale = std::max(phi0, std::abs(branch_pair(f0).phi_low));
  const double dphi_scale = 4.0 * kSqrtPi * std::sqrt(f0 - 1.0 + 1e-300);
  const double atol_phi = rtol * phi_scale;
  const double atol_dphi = rtol * dphi_scale;

  RkResult out;
  State y{phi0, 0.0};
  double t = 0.0;
  double h = 1e-3 / std::sqrt(kEightPi * std::max(1.0, std::exp(phi0)));
  const double h_min = 1e-14 / std::sqrt(kEightPi * std::exp(phi0));
  out.samples.push_back({0.0, y.phi, y.dphi});

  for (int guard = 0; guard < 10'000'000; ++guard) {
    const Step s = dp_step(y, h);
    const double e = std::max(std::abs(s.err.phi) / (atol_phi + rtol * std::abs(s.y.phi)),
                              std::abs(s.err.dphi) / (atol_dphi + rtol * std::abs(s.y.dphi)));
    if (!(e <= 1.0)) {
      ++out.rejected;
      h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
      if (!(h > h_min)) throw PrecisionError(fmt::format("rk_oracle: step size collapsed at t = {}", t));
      continue;
    }
    ++out.steps;
    if (y.dphi < 0.0 && s.y.dphi >= 0.0 && s.y.phi < 0.0) {
      // Locate phi' = 0 inside the step by Newton on the step length, using
      // d(phi')/dt = 8 pi (1 - e^phi).
      double lo = 0.0;
      double hi = h;
      double d = h * y.dphi / (y.dphi - s.y.dphi);
      State at = y;
      for (int it = 0; it < 50; ++it) {
        at = dp_step(y, d).y;
        if (at.dphi < 0.0) lo = d; else hi = d;
        const double slope = -kEightPi * std::expm1(at.phi);
        double next = d - at.dphi / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - d) <= 1e-16 * (t + d)) {
          d = next;
          at = dp_step(y, d).y;
          break;
        }
        d = next;
      }
      t += d;
      out.max_energy_drift = std::max(out.max_energy_drift, drift(at));
      out.samples.push_back({t, at.phi, at.dphi});
      out.half_period = t;
      out.period = 2.0 * t;
      return out;
    }
    t += h;
    y = s.y;
    out.max_energy_drift = std::max(out.max_energy_drift, drift(y));
    out.samples.push_back({t, y.phi, y.dphi});
    h *= std::min(5.0, 0.9 * std::pow(std::max(e, 1e-10), -0.2));
  }
  throw PrecisionError("rk_oracle: no return to phi' = 0 within the step budget");
}

}  // namespace torusmass
