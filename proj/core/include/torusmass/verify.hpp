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

// Machine checks of the inequality chain behind the negative-mass theorem.
// Each check compares computed quantities with explicit margins and error
// estimates; a margin within ten error estimates of zero is reported as
// inconclusive rather than pass or fail.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torusmass/report_io.hpp"

namespace torusmass {

enum class Status { kPass, kFail, kInconclusive };

std::string_view to_string(Status s);

// Classifies a margin: pass iff margin > 10 err, fail iff margin < -10 err.
Status classify(double margin, double err_estimate);

struct SubCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs for lhs < rhs
  double err_estimate = 0.0;
  Status status = Status::kInconclusive;
};

struct CheckResult {
  std::string id;
  // lhs/rhs/margin/err_estimate of the binding sub-check: the first failing
  // one, else the first inconclusive one, else the one with least margin.
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double err_estimate = 0.0;
  Status status = Status::kInconclusive;
  std::string paper_ref;
  std::vector<SubCheck> details;
  std::vector<std::pair<std::string, double>> metrics;
};

struct VerifyConfig {
  // Quadrature tolerance; also the relative floor of every error estimate.
  double tol = 1e-10;
  int n_samples = 1024;
  double lambda = 0.098;
  double C = 0.002;
  std::vector<double> beta_grid;       // check_theorem_1_prime
  std::vector<double> h0_grid;         // check_lemma_2_9, check_asymptotic_C_zero
  std::vector<double> small_f0_grid;   // check_epsilon_positive, within (1, 5 - log 5]
  std::vector<double> remark_f0_grid;  // check_remark_1_19, within (1, f(80)]
  std::vector<std::string> only;       // empty: run every check

  static VerifyConfig defaults();
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  Status overall = Status::kInconclusive;
  Json provenance;
};

// Log-spaced grid with the given density per decade, both ends included.
std::vector<double> log_grid(double lo, double hi, int per_decade);

// Default grids.
std::vector<double> default_beta_grid();
std::vector<double> default_h0_grid();
std::vector<double> default_small_f0_grid();
std::vector<double> default_remark_f0_grid();

// Check ids in proof order.
const std::vector<std::string>& check_ids();

CheckResult check_flat_small_beta(double tol = 1e-10);
CheckResult check_prop_2_7(double lambda, double f1, double tol = 1e-10);
CheckResult check_epsilon_positive(const std::vector<double>& f0_grid, double tol = 1e-10);
CheckResult check_lemma_2_9(const std::vector<double>& h0_grid, double tol = 1e-10);
CheckResult check_remark_1_19(const std::vector<double>& f0_grid, double tol = 1e-10);
CheckResult check_asymptotic_C_zero(const std::vector<double>& h0_grid, double tol = 1e-10);
CheckResult check_lemma_2_12(double C, double beta1, double tol = 1e-10);
CheckResult check_theorem_1_prime(const std::vector<double>& b_grid, int n_samples, double tol = 1e-10);

// Runs the selected checks in proof order. Throws DomainError for empty
// grids or unknown ids in config.only.
VerificationReport full_chain(const VerifyConfig& config = VerifyConfig::defaults());

Json to_json(const CheckResult& c);
Json to_json(const VerificationReport& r);

}  // namespace torusmass
