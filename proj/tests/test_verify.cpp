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
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/verify.hpp"

namespace torusmass {
namespace {

const double kF1 = 5.0 - std::log(5.0);

TEST(Classify, MarginDiscipline) {
  EXPECT_EQ(classify(1.0, 0.01), Status::kPass);
  EXPECT_EQ(classify(0.1, 0.01), Status::kInconclusive);
  EXPECT_EQ(classify(-0.1, 0.01), Status::kInconclusive);
  EXPECT_EQ(classify(-1.0, 0.01), Status::kFail);
  EXPECT_EQ(classify(NAN, 0.01), Status::kFail);
  EXPECT_EQ(classify(1.0, INFINITY), Status::kFail);
}

TEST(Grids, LogGridEndpoints) {
  const auto g = log_grid(2.0, 20.0, 64);
  EXPECT_EQ(g.size(), 65u);
  EXPECT_EQ(g.front(), 2.0);
  EXPECT_EQ(g.back(), 20.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  const auto beta = default_beta_grid();
  EXPECT_EQ(beta.back(), 12.0);
  EXPECT_GT(beta.front(), 2.2214415);
}

TEST(Checks, FlatSmallBeta) {
  const CheckResult c = check_flat_small_beta();
  EXPECT_EQ(c.status, Status::kPass);
  ASSERT_EQ(c.details.size(), 3u);
  EXPECT_NEAR(c.details[0].lhs, 0.01745, 1e-4);   // endpoint tail
  EXPECT_LE(c.details[1].lhs, -0.04);             // convex part
  EXPECT_LT(c.details[2].lhs, 0.0);               // right-hand side
}

TEST(Checks, Prop27Defaults) {
  const CheckResult c = check_prop_2_7(0.098, kF1);
  EXPECT_EQ(c.status, Status::kPass);
  ASSERT_EQ(c.details.size(), 3u);
  EXPECT_NEAR(c.details[0].rhs, 0.10359505602596267, 1e-14);
  EXPECT_NEAR(c.details[1].rhs, 4.8528449111e-5, 1e-12);
  EXPECT_NEAR(c.details[2].lhs, -0.0014915070810925, 1e-12);
  EXPECT_EQ(c.margin, c.details[1].margin);  // W is the binding condition
}

TEST(Checks, Prop27LooseToleranceIsInconclusive) {
  const CheckResult c = check_prop_2_7(0.098, kF1, 1e-4);
  EXPECT_EQ(c.status, Status::kInconclusive);
  EXPECT_GT(c.margin, 0.0);
}

TEST(Checks, Prop27FailsForLargeLambda) {
  EXPECT_EQ(check_prop_2_7(0.2, kF1).status, Status::kFail);
}

TEST(Checks, EpsilonPositive) {
  const CheckResult c = check_epsilon_positive(default_small_f0_grid());
  EXPECT_EQ(c.status, Status::kPass);
  EXPECT_THROW(check_epsilon_positive({}), DomainError);
  EXPECT_THROW(check_epsilon_positive({4.0}), DomainError);
}

TEST(Checks, Lemma29) {
  const CheckResult c = check_lemma_2_9(default_h0_grid());
  EXPECT_EQ(c.status, Status::kPass);
  EXPECT_THROW(check_lemma_2_9({4.0}), DomainError);
}

TEST(Checks, Remark119Bracket) {
  const CheckResult c = check_remark_1_19(default_remark_f0_grid());
  EXPECT_EQ(c.status, Status::kPass);
  double lo = 0.0, hi = 0.0;
  for (const auto& [k, v] : c.metrics) {
    if (k == "epsilon_e_phi0_min") lo = v;
    if (k == "epsilon_e_phi0_max") hi = v;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 10.0);
  EXPECT_LE(lo, hi);
}

TEST(Checks, AsymptoticAndLemma212) {
  EXPECT_EQ(check_asymptotic_C_zero({10, 14, 20, 40, 80, 140, 200}).status, Status::kPass);
  EXPECT_THROW(check_asymptotic_C_zero({5.0}), DomainError);
  const CheckResult c = check_lemma_2_12(0.002, kBetaMin);
  EXPECT_EQ(c.status, Status::kPass);
  EXPECT_NEAR(c.details[0].lhs, 2.0690879728124267e-4, 1e-15);
}

TEST(Checks, TheoremOnCoarseGrid) {
  const CheckResult c = check_theorem_1_prime({1.3, 1.6, 2.0, 4.0, 8.0 / kSqrtPi}, 1024);
  EXPECT_EQ(c.status, Status::kPass);
  EXPECT_THROW(check_theorem_1_prime({1.2}, 1024), DomainError);
}

TEST(FullChain, FilterAndErrors) {
  VerifyConfig cfg = VerifyConfig::defaults();
  cfg.only = {"check_lemma_2_12"};
  const VerificationReport r = full_chain(cfg);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].id, "check_lemma_2_12");
  EXPECT_EQ(r.overall, Status::kPass);

  cfg.only = {"check_nonexistent"};
  EXPECT_THROW(full_chain(cfg), DomainError);

  VerifyConfig empty = VerifyConfig::defaults();
  empty.beta_grid.clear();
  empty.only = {"check_theorem_1_prime"};
  EXPECT_THROW(full_chain(empty), DomainError);
}

TEST(FullChain, LooseToleranceIsInconclusive) {
  VerifyConfig cfg = VerifyConfig::defaults();
  cfg.tol = 1e-4;
  cfg.only = {"check_prop_2_7", "check_lemma_2_12"};
  EXPECT_EQ(full_chain(cfg).overall, Status::kInconclusive);
}

TEST(FullChain, DefaultPassesDeterministically) {
  const VerificationReport a = full_chain();
  const VerificationReport b = full_chain();
  EXPECT_EQ(a.overall, Status::kPass);
  const std::string ja = to_json(a).dump();
  EXPECT_EQ(ja, to_json(b).dump());

  ASSERT_EQ(a.checks.size(), check_ids().size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].id, check_ids()[i]);
    EXPECT_EQ(a.checks[i].status, Status::kPass) << a.checks[i].id;
    EXPECT_GT(a.checks[i].margin, 10.0 * a.checks[i].err_estimate);
  }

  const auto doc = nlohmann::json::parse(ja);
  EXPECT_EQ(doc.at("overall"), "pass");
  ASSERT_EQ(doc.at("checks").size(), a.checks.size());
  for (const auto& c : doc.at("checks")) {
    for (const char* key : {"id", "lhs", "rhs", "margin", "err_estimate", "status", "paper_ref"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
  }
  EXPECT_EQ(doc.at("config").at("tol").get<double>(), 1e-10);
}

}  // namespace
}  // namespace torusmass
