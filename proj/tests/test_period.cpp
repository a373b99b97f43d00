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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/period.hpp"

namespace torusmass {
namespace {

const double kF5 = 5.0 - std::log(5.0);

TEST(Period, ReferenceValues) {
  // mpmath quadrature of the same integral, 25 digits
  EXPECT_NEAR(beta_of_f0(kF5).beta, 2.6728324693874132, 1e-14);
  EXPECT_NEAR(beta_of_f0(2.0).beta, 2.4094187560467377, 1e-14);
  EXPECT_NEAR(beta_of_f0(1.1).beta, 2.2399910532997921, 1e-14);
}

TEST(Period, ErrorEstimateWithinTolerance) {
  for (double f0 : {1.0001, 2.0, 50.0, 1e6}) {
    const PeriodResult r = beta_of_f0(f0, 1e-12);
    EXPECT_LE(r.err_estimate, 1e-12 * std::max(1.0, r.beta));
    EXPECT_EQ(r.f0, f0);
  }
}

TEST(Period, TrivialLimit) {
  EXPECT_NEAR(beta_of_f0(1.0 + 1e-8).beta, kBetaMin, 1e-4);
  EXPECT_NEAR(beta_of_excess(1e-12).beta, kBetaMin, 1e-6);
  EXPECT_GT(beta_of_excess(1e-12).beta, kBetaMin);
}

TEST(Period, BetaOneBelowThreePointEight) {
  const double beta1 = beta_of_f0(kF5).beta;
  EXPECT_GT(beta1, kBetaMin);
  EXPECT_LE(beta1, beta_upper_bound(kF5));
  EXPECT_NEAR(beta_upper_bound(kF5), 3.7675857338765854, 1e-15);
  EXPECT_LE(beta_upper_bound(kF5), 3.8);
  EXPECT_EQ(beta_upper_bound(1.0), kBetaMin);
  EXPECT_NEAR(beta_upper_bound(10.0), kBetaMin + 3.0, 1e-15);
}

TEST(Period, MonotoneAndWithinRange) {
  double prev = kBetaMin;
  for (double d = 1e-6; d < 1e5; d *= 1.3) {
    const double beta = beta_of_excess(d).beta;
    EXPECT_GT(beta, prev) << "d = " << d;
    EXPECT_LE(beta, kBetaMin + std::sqrt(d));
    prev = beta;
  }
}

TEST(Period, LargeAmplitudeGapShrinks) {
  // beta^2 - (h0 + 2 log 2) is positive and decreasing in h0.
  const std::vector<double> h0s{20.0, 50.0, 200.0};
  const std::vector<double> expected{0.1232085696298526, 0.046027491819394584, 0.011154747503383078};
  double prev = INFINITY;
  for (std::size_t i = 0; i < h0s.size(); ++i) {
    const double beta = beta_of_f0(f_of_h(h0s[i])).beta;
    const double gap = beta * beta - (h0s[i] + 2.0 * kLog2);
    EXPECT_NEAR(gap, expected[i], 1e-9);
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Period, DerivativeMatchesFiniteDifferences) {
  for (double f0 : {2.0, kF5, 30.0}) {
    const double h = 1e-4;
    const double fd = (beta_of_f0(f0 + h).beta - beta_of_f0(f0 - h).beta) / (2.0 * h);
    const double d = dbeta_df0(f0);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(d, fd, 1e-6 * fd) << "f0 = " << f0;
  }
}

TEST(Period, DerivativeLimitAtOne) {
  // J'(f) ~ 1/(6 sqrt(2 (f - 1))) gives dbeta/df0 -> pi / (12 sqrt 2).
  const double limit = kPi / (12.0 * kSqrt2);
  EXPECT_NEAR(dbeta_df0(1.0 + 1e-4), limit, 1e-5);
  EXPECT_NEAR(dbeta_dexcess(1e-10), limit, 1e-8);
}

TEST(Period, DomainErrors) {
  EXPECT_THROW(beta_of_f0(1.0), DomainError);
  EXPECT_THROW(beta_of_f0(0.5), DomainError);
  EXPECT_THROW(beta_of_f0(2e6), DomainError);
  EXPECT_THROW(beta_of_f0(2.0, 1e-14), DomainError);
  EXPECT_THROW(dbeta_df0(1.0), DomainError);
  EXPECT_THROW(beta_upper_bound(0.5), DomainError);
}

TEST(Series, GammaCoefficients) {
  EXPECT_EQ(gamma_k(0), 1.0);
  EXPECT_EQ(gamma_k(1), 0.5);
  EXPECT_EQ(gamma_k(2), 0.375);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_LT(gamma_k(k), gamma_k(k - 1));
    const double exact = std::tgamma(2.0 * k + 1) / (std::pow(4.0, k) * std::pow(std::tgamma(k + 1.0), 2));
    EXPECT_NEAR(gamma_k(k), exact, 1e-15);
  }
}

TEST(Series, LowOrderIdentities) {
  for (double tau : {0.0, 1e-6, 0.1, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(mu_k(0, tau), std::sqrt(tau), 1e-12);
    EXPECT_NEAR(nu_k(0, tau), tau, 1e-12);
    EXPECT_NEAR(nu_k(1, tau), mu_k(0, tau) * mu_k(1, tau), 1e-15);
  }
  EXPECT_NEAR(mu_k(1, 1.0), 2.0 * kLog2 - 1.0, 1e-14);
  EXPECT_NEAR(nu_k(1, 1.0), 2.0 * kLog2 - 1.0, 1e-14);
  EXPECT_NEAR(kappa_k(0, 1.0), 2.0 * kLog2 - 2.0, 1e-10);
}

TEST(Series, ClosedFormOfFirstMoment) {
  for (double tau : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
    EXPECT_NEAR(mu_k(1, tau), mu1_closed(tau), 1e-11) << "tau = " << tau;
  }
  EXPECT_NEAR(mu1_closed(0.25), 0.023248143764547834, 1e-15);
  EXPECT_LT(std::abs(mu1_closed(1e-6)), 1e-5);
  EXPECT_NEAR(mu1_closed(0.993), 0.36883311727250848, 1e-13);
  EXPECT_THROW(mu1_closed(1.0), DomainError);
}

TEST(Series, KappaSmallTau) {
  const double tau = 1e-3;
  const double lead = -std::pow(tau, 1.5) / 3.0;
  EXPECT_NEAR(kappa_k(0, tau), lead, 0.05 * std::abs(lead));
  EXPECT_NEAR(kappa_k(0, tau), -1.05440893182802568e-5, 1e-18);
  EXPECT_LT(kappa_k(1, 1.0), 0.0);
}

TEST(Series, TablesAtOne) {
  // mpmath, 25 digits
  const std::vector<double> mu{1.0,
                               0.38629436111989062,
                               0.53182245192795531,
                               1.3339508887085895,
                               4.8756830207884126,
                               23.267184455592246,
                               136.217176486199,
                               941.14708926109485,
                               7476.723096753844};
  const std::vector<double> nu{1.0,
                               0.38629436111989062,
                               0.4361726723042226,
                               0.91075931080413966,
                               2.8671933740210359,
                               12.13309438818512,
                               64.374784232071671,
                               409.55486216855183,
                               3031.530662830968};
  const SeriesTables& t = default_series_tables();
  ASSERT_EQ(t.K, kSeriesKMax);
  ASSERT_EQ(t.mu1_values.size(), mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    EXPECT_NEAR(t.mu1_values[k], mu[k], 1e-13 * mu[k]) << "k = " << k;
    EXPECT_NEAR(t.nu1_values[k], nu[k], 1e-13 * nu[k]) << "k = " << k;
    EXPECT_GT(t.mu1_values[k], 0.0);
    EXPECT_LE(t.kappa1_values[k], 0.0);
  }
  const double m1 = t.mu1_values[1];
  EXPECT_GT(t.nu1_values[2], m1 * m1 / 4.0);
  EXPECT_NEAR(m1 * m1 / 4.0, 0.0373, 1e-4);
}

TEST(Series, RejectsOutOfRange) {
  EXPECT_THROW(mu_k(9, 0.5), DomainError);
  EXPECT_THROW(mu_k(1, 1.5), DomainError);
  EXPECT_THROW(kappa_k(-1, 0.5), DomainError);
  EXPECT_THROW(beta_sq_asymptotic(2.0, 1), DomainError);
}

TEST(Asymptotics, LeadingTerms) {
  EXPECT_NEAR(beta_sq_asymptotic(10.0, 0), 100.0 / 9.0, 1e-13);
  // K = 1 reproduces h0 + 2 log 2 up to O(1/h0).
  for (double h0 : {1e3, 1e4}) {
    EXPECT_NEAR(beta_sq_asymptotic(h0, 1) - h0, 2.0 * kLog2, 3.0 / h0);
  }
}

TEST(Asymptotics, TruncationErrorDecays) {
  // Dropping the terms beyond K leaves an error of order h0^{-K}: one extra
  // power of 1/h0 per retained coefficient.
  double prev2 = INFINITY, prev4 = INFINITY;
  for (double h0 : {10.0, 20.0, 40.0, 80.0}) {
    const double beta = beta_of_f0(f_of_h(h0)).beta;
    const double err2 = std::abs(beta * beta - beta_sq_asymptotic(h0, 2));
    const double err4 = std::abs(beta * beta - beta_sq_asymptotic(h0, 4));
    EXPECT_LT(err2 * h0 * h0, 3.0) << "h0 = " << h0;
    EXPECT_LT(err4 * std::pow(h0, 4), 60.0) << "h0 = " << h0;
    EXPECT_LT(err2, prev2 / 4.0);
    EXPECT_LT(err4, prev4 / 16.0);
    prev2 = err2;
    prev4 = err4;
  }
}

}  // namespace
}  // namespace torusmass
