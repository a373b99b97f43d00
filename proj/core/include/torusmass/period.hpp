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

#pragma once

// The period-amplitude map beta(f0) of phi'' = 8 pi (1 - e^phi), written as
//
//   beta(f0) = pi/sqrt(2) + 1/2 int_1^f0 J(f) / sqrt(f0 - f) df,
//
// together with the Taylor-coefficient integrals mu_k, nu_k, kappa_k that
// govern its large-amplitude expansion.

#include <vector>

namespace torusmass {

struct PeriodResult {
  double f0 = 1.0;
  double beta = 0.0;  // sqrt(pi) * b
  double err_estimate = 0.0;
};

inline constexpr double kMaxF0 = 1e6;
inline constexpr int kSeriesKMax = 8;

// f0 in (1, 1e6], tol >= 1e-13. Throws PrecisionError when the quadrature
// level difference stays above tol * max(1, beta).
PeriodResult beta_of_f0(double f0, double tol = 1e-13);

// Same map parameterized by d0 = f0 - 1, for amplitudes near the trivial
// solution where forming f0 - 1 would lose digits.
PeriodResult beta_of_excess(double excess, double tol = 1e-13);

double dbeta_df0(double f0);
double dbeta_dexcess(double excess);

// pi/sqrt(2) + sqrt(f0 - 1); an upper bound for beta(f0) since 0 < J < 1.
double beta_upper_bound(double f0);

// (2k)! / (2^{2k} (k!)^2), the Taylor coefficients of (1 - x)^{-1/2}.
double gamma_k(int k);

// 1/2 int_0^tau t^{-1/2} ((-log(1 - t) - t)/t)^k dt
double mu_k(int k, double tau);

// Closed form of mu_1 on (0, 1).
double mu1_closed(double tau);

// sum_{j=0}^k gamma_j gamma_{k-j} mu_j(tau) mu_{k-j}(tau)
double nu_k(int k, double tau);

// 1/2 int_0^tau log(1 - t) t^{-1/2} ((-log(1 - t) - t)/t)^k dt  (<= 0)
double kappa_k(int k, double tau);

struct SeriesTables {
  int K = 0;
  std::vector<double> gamma;
  std::vector<double> mu1_values;
  std::vector<double> nu1_values;
  std::vector<double> kappa1_values;
};

SeriesTables compute_series_tables(int K);

// Tables for K = kSeriesKMax, built once on first use.
const SeriesTables& default_series_tables();

// (h0^2/(h0 - 1)) sum_{k=0}^K nu_k(1) / (h0 - 1)^k, the truncated large-h0
// expansion of beta^2. Requires h0 > 2 and K <= kSeriesKMax.
double beta_sq_asymptotic(double h0, int K);

}  // namespace torusmass
