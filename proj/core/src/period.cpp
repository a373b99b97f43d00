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

#include "torusmass/period.hpp"

#include <cmath>

#include <fmt/format.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/quadrature.hpp"

namespace torusmass {
namespace {

// d = U^2 - u^2 at a node of [0, U], formed from whichever endpoint is closer.
double excess_at(const quad::Node& n, double d0, double U) {
  const double u = n.from_left;
  if (u < 0.5 * U) return d0 - u * u;
  return n.from_right * (U + u);
}

void require_f0_excess(double excess, const char* what) {
  if (!(excess > 0.0) || !(1.0 + excess <= kMaxF0)) {
    throw DomainError(fmt::format("{}: f0 must lie in (1, {}] (got f0 - 1 = {})", what, kMaxF0, excess));
  }
}

// (-log(1 - t) - t) / t given t and 1 - t separately.
double log_ratio(double t, double one_minus_t) {
  if (t < 0.25) {
    double term = t;
    double s = 0.0;
    for (int n = 1; n < 80; ++n) {
      const double add = term / (n + 1);
      s += add;
      if (add < 1e-18 * s) break;
      term *= t;
    }
    return s;
  }
  return (-std::log(one_minus_t) - t) / t;
}

double log_one_minus(double t, double one_minus_t) {
  return t < 0.5 ? std::log1p(-t) : std::log(one_minus_t);
}

void require_series_args(int k, double tau, const char* what) {
  if (k < 0 || k > kSeriesKMax) {
    throw DomainError(fmt::format("{}: k must lie in [0, {}] (got {})", what, kSeriesKMax, k));
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError(fmt::format("{}: tau must lie in [0, 1] (got {})", what, tau));
  }
}

// int_0^{sqrt(tau)} g(t, 1 - t) dv with t = v^2; the v-substitution absorbs
// the t^{-1/2} factor of mu_k and kappa_k.
template <typename G>
double series_integral(G&& g, double tau, const char* what) {
  const double top = std::sqrt(tau);
  const double gap = 1.0 - top;
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  opt.max_level = 12;
  const auto res = quad::tanh_sinh(
      [&](const quad::Node& n) {
        const double v = n.from_left;
        const double one_minus_v = gap + n.from_right;
        return g(v * v, one_minus_v * (1.0 + v));
      },
      0.0, top, opt);
  if (!res.converged && res.err_estimate > 1e-11 * std::abs(res.value)) {
    throw PrecisionError(fmt::format("{}: quadrature did not converge (err {})", what, res.err_estimate));
  }
  return res.value;
}

}  // namespace

PeriodResult beta_of_excess(double excess, double tol) {
  require_f0_excess(excess, "beta_of_f0");
  if (!(tol >= 1e-13)) throw DomainError(fmt::format("beta_of_f0: tol must be >= 1e-13 (got {})", tol));
  const double U = std::sqrt(excess);
  quad::Options opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * kBetaMin;
  opt.max_level = 12;
  const auto res = quad::tanh_sinh(
      [&](const quad::Node& n) { return J_from_excess(excess_at(n, excess, U)); }, 0.0, U, opt);
  PeriodResult out{1.0 + excess, kBetaMin + res.value, res.err_estimate};
  if (!res.converged) {
    throw PrecisionError(fmt::format("beta_of_f0: quadrature error {} exceeds tol {} at f0 - 1 = {}",
                                     res.err_estimate, tol, excess));
  }
  return out;
}

PeriodResult beta_of_f0(double f0, double tol) {
  if (!(f0 > 1.0)) throw DomainError(fmt::format("beta_of_f0: f0 must exceed 1 (got {})", f0));
  PeriodResult r = beta_of_excess(f0 - 1.0, tol);
  r.f0 = f0;
  return r;
}

double dbeta_dexcess(double excess) {
  require_f0_excess(excess, "dbeta_df0");
  const double U = std::sqrt(excess);
  quad::Options opt;
  opt.rel_tol = 1e-12;
  opt.max_level = 14;
  // J' ~ (f - 1)^{-1/2} makes the integrand singular like (U - u)^{-1/2} at u = U.
  const auto res = quad::tanh_sinh(
      [&](const quad::Node& n) { return J_prime_from_excess(excess_at(n, excess, U)); }, 0.0, U,
      opt);
  if (!res.converged) {
    throw PrecisionError(fmt::format("dbeta_df0: quadrature error {} at f0 - 1 = {}", res.err_estimate, excess));
  }
  return res.value;
}

double dbeta_df0(double f0) {
  if (!(f0 > 1.0)) throw DomainError(fmt::format("dbeta_df0: f0 must exceed 1 (got {})", f0));
  return dbeta_dexcess(f0 - 1.0);
}

double beta_upper_bound(double f0) {
  if (!(f0 >= 1.0)) throw DomainError(fmt::format("beta_upper_bound: f0 must be >= 1 (got {})", f0));
  return kBetaMin + std::sqrt(f0 - 1.0);
}

double gamma_k(int k) {
  if (k < 0) throw DomainError("gamma_k: k must be >= 0");
  double g = 1.0;
  for (int j = 1; j <= k; ++j) g *= (2.0 * j - 1.0) / (2.0 * j);
  return g;
}

double mu_k(int k, double tau) {
  require_series_args(k, tau, "mu_k");
  if (k == 0) return std::sqrt(tau);
  if (tau == 0.0) return 0.0;
  return series_integral(
      [k](double t, double omt) { return std::pow(log_ratio(t, omt), k); }, tau, "mu_k");
}

double mu1_closed(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw DomainError(fmt::format("mu1_closed: tau must lie in (0, 1) (got {})", tau));
  }
  const double r = std::sqrt(tau);
  return 2.0 * std::log1p(r) - r + (1.0 / r - 1.0) * std::log1p(-tau);
}

double nu_k(int k, double tau) {
  require_series_args(k, tau, "nu_k");
  if (k == 0) return tau;
  std::vector<double> mu(k + 1);
  for (int j = 0; j <= k; ++j) mu[j] = mu_k(j, tau);
  double s = 0.0;
  for (int j = 0; j <= k; ++j) s += gamma_k(j) * gamma_k(k - j) * mu[j] * mu[k - j];
  return s;
}

double kappa_k(int k, double tau) {
  require_series_args(k, tau, "kappa_k");
  if (tau == 0.0) return 0.0;
  return series_integral(
      [k](double t, double omt) {
        const double l = log_one_minus(t, omt);
        return k == 0 ? l : l * std::pow(log_ratio(t, omt), k);
      },
      tau, "kappa_k");
}

SeriesTables compute_series_tables(int K) {
  if (K < 0 || K > kSeriesKMax) {
    throw DomainError(fmt::format("compute_series_tables: K must lie in [0, {}]", kSeriesKMax));
  }
  SeriesTables t;
  t.K = K;
  for (int k = 0; k <= K; ++k) {
    t.gamma.push_back(gamma_k(k));
    t.mu1_values.push_back(mu_k(k, 1.0));
    t.kappa1_values.push_back(kappa_k(k, 1.0));
  }
  for (int k = 0; k <= K; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += t.gamma[j] * t.gamma[k - j] * t.mu1_values[j] * t.mu1_values[k - j];
    t.nu1_values.push_back(s);
  }
  return t;
}

const SeriesTables& default_series_tables() {
  static const SeriesTables tables = compute_series_tables(kSeriesKMax);
  return tables;
}

double beta_sq_asymptotic(double h0, int K) {
  if (!(h0 > 2.0)) throw DomainError(fmt::format("beta_sq_asymptotic: h0 must exceed 2 (got {})", h0));
  if (K < 0 || K > kSeriesKMax) {
    throw DomainError(fmt::format("beta_sq_asymptotic: K must lie in [0, {}]", kSeriesKMax));
  }
  const auto& nu = default_series_tables().nu1_values;
  const double x = 1.0 / (h0 - 1.0);
  double s = 0.0;
  for (int k = K; k >= 0; --k) s = s * x + nu[k];
  return h0 * h0 * x * s;
}

}  // namespace torusmass
