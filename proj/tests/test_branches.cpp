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
#include <random>

#include <gtest/gtest.h>

#include "torusmass/branches.hpp"
#include "torusmass/error.hpp"

namespace torusmass {
namespace {

const double kF5 = 5.0 - std::log(5.0);

TEST(Branches, FunctionValues) {
  EXPECT_NEAR(f_of_phi(-3.0), 3.049787068367864, 1e-15);
  EXPECT_NEAR(f_of_phi(std::log(5.0)), kF5, 1e-15);
  EXPECT_EQ(f_of_h(5.0), kF5);
  EXPECT_NEAR(excess_of_phi(1e-5), 5.000016666708333e-11, 1e-25);
  EXPECT_NEAR(excess_of_phi(-0.49), std::exp(-0.49) - 1.0 + 0.49, 1e-16);
  EXPECT_THROW(f_of_phi(800.0), DomainError);
}

TEST(Branches, AmplitudeFive) {
  const BranchPair bp = branch_pair(kF5);
  EXPECT_NEAR(bp.phi_high, std::log(5.0), 1e-15);
  EXPECT_NEAR(bp.h_high, 5.0, 1e-14);
  // mpmath, 30 digits
  EXPECT_NEAR(bp.h_low, 0.034885768255723696, 1e-17);
  EXPECT_NEAR(bp.phi_low, std::log(0.034885768255723696), 1e-15);
}

TEST(Branches, ResidualOnRandomAmplitudes) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> log_excess(std::log(1e-12), std::log(1e6 - 1.0));
  for (int i = 0; i < 10000; ++i) {
    const double d = std::exp(log_excess(rng));
    const BranchPair bp = branch_pair_from_excess(d);
    ASSERT_LE(bp.phi_low, 0.0);
    ASSERT_GE(bp.phi_high, 0.0);
    // A few ulps in phi, amplified by the slope e^phi - 1 of the excess.
    for (const double phi : {bp.phi_high, bp.phi_low}) {
      const double tol = 4e-15 * d + 1e-15 * std::abs(phi * std::expm1(phi));
      ASSERT_NEAR(excess_of_phi(phi), d, tol) << "d = " << d << ", phi = " << phi;
    }
  }
}

TEST(Branches, DegenerateExcessCollapsesToZero) {
  const BranchPair bp = branch_pair_from_excess(0.5 * kDegenerateExcess);
  EXPECT_EQ(bp.phi_low, 0.0);
  EXPECT_EQ(bp.phi_high, 0.0);
}

TEST(Branches, TreeSeriesMatchesNewtonBranch) {
  for (double f = 2.0; f <= 30.0; f += 0.5) {
    const double h = branch_pair(f).h_low;
    EXPECT_NEAR(h_low_series(f, 60), h, 1e-13 * h) << "f = " << f;
  }
  EXPECT_NEAR(h_low_series(3.0, 60), 0.052469097457714858, 1e-16);
  EXPECT_THROW(h_low_series(1.5, 60), DomainError);
}

TEST(Jacobian, ReferenceValues) {
  // mpmath, 30 digits
  EXPECT_NEAR(J(kF5), 0.37147562009239765, 1e-15);
  EXPECT_NEAR(J(3.0), 0.34066159844959287, 1e-15);
  EXPECT_NEAR(J(1e6), 0.99858678571770421, 1e-15);
  EXPECT_EQ(J(1.0), 0.0);
  EXPECT_THROW(j_variables(1.0), DomainError);
}

TEST(Jacobian, LimitsNearOne) {
  const JPair jp = j_variables_from_excess(1e-10);
  EXPECT_NEAR(jp.j_high, kJHighAtOne, 1e-5);
  EXPECT_NEAR(jp.j_low, kJLowAtOne, 1e-5);
  // J ~ sqrt(2 d) / 6
  for (double d : {1e-12, 1e-9, 1e-6}) {
    EXPECT_NEAR(J_from_excess(d), std::sqrt(2.0 * d) / 6.0, 1e-3 * std::sqrt(2.0 * d) / 6.0);
  }
}

TEST(Jacobian, SmoothAcrossSeriesSwitch) {
  // The series and closed-form evaluations meet at |phi| = 0.5.
  for (double d = 0.05; d < 0.3; d += 0.0025) {
    const double h = 1e-5;
    const double second = (J_from_excess(d + h) - 2.0 * J_from_excess(d) + J_from_excess(d - h)) / (h * h);
    EXPECT_LT(second, 0.0) << "d = " << d;
  }
}

TEST(Jacobian, MonotoneConcaveInUnitInterval) {
  double prev = 0.0;
  double prev_slope = INFINITY;
  for (double f = 1.01; f < 200.0; f *= 1.05) {
    const double j = J(f);
    EXPECT_GT(j, prev);
    EXPECT_LT(j, 1.0);
    const double slope = J_prime_from_excess(f - 1.0);
    EXPECT_GT(slope, 0.0);
    EXPECT_LT(slope, prev_slope);
    prev = j;
    prev_slope = slope;
  }
}

TEST(Jacobian, DerivativeMatchesFiniteDifferences) {
  for (double f : {1.001, 1.3, 2.0, kF5, 10.0, 100.0}) {
    const double h = 1e-5 * (f - 1.0);
    const double fd = (J(f + h) - J(f - h)) / (2.0 * h);
    EXPECT_NEAR(J_prime_from_excess(f - 1.0), fd, 1e-7 * std::abs(fd)) << "f = " << f;
  }
}

}  // namespace
}  // namespace torusmass
