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

#include "torusmass/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "torusmass/branches.hpp"
#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/period.hpp"
#include "torusmass/profile.hpp"
#include "torusmass/spectral.hpp"

namespace torusmass {
namespace {

constexpr double kRound = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kLemmaLambda = 0.098;

// Accumulates sub-inequalities lhs < rhs and condenses them into one result.
class Collector {
 public:
  explicit Collector(double tol) : tol_(tol) {}

  // err is the numerical error of rhs - lhs; scale is the magnitude of the
  // terms that were combined to form it, used for the tolerance floor.
  void less(std::string name, double lhs, double rhs, double err, double scale) {
    SubCheck s;
    s.name = std::move(name);
    s.lhs = lhs;
    s.rhs = rhs;
    s.margin = rhs - lhs;
    s.err_estimate = std::max({err, tol_ * std::abs(scale), kRound * std::abs(scale)});
    s.status = classify(s.margin, s.err_estimate);
    subs_.push_back(std::move(s));
  }

  void metric(std::string name, double value) { metrics_.emplace_back(std::move(name), value); }

  CheckResult finish(std::string id, std::string ref) {
    CheckResult r;
    r.id = std::move(id);
    r.paper_ref = std::move(ref);
    const SubCheck* binding = nullptr;
    for (const auto& s : subs_) {
      if (s.status == Status::kFail) {
        binding = &s;
        break;
      }
    }
    if (!binding) {
      for (const auto& s : subs_) {
        if (s.status == Status::kInconclusive) {
          binding = &s;
          break;
        }
      }
    }
    if (!binding) {
      for (const auto& s : subs_) {
        if (!binding || s.margin < binding->margin) binding = &s;
      }
    }
    if (binding) {
      r.lhs = binding->lhs;
      r.rhs = binding->rhs;
      r.margin = binding->margin;
      r.err_estimate = binding->err_estimate;
      r.status = binding->status;
    }
    r.details = std::move(subs_);
    r.metrics = std::move(metrics_);
    return r;
  }

 private:
  double tol_;
  std::vector<SubCheck> subs_;
  std::vector<std::pair<std::string, double>> metrics_;
};

double beta_tol(double tol) { return std::clamp(tol, 1e-13, 1e-6); }

struct BetaValue {
  double beta;
  double err;
};

BetaValue beta_with_error(double f0, double tol) {
  const PeriodResult r = beta_of_f0(f0, beta_tol(tol));
  return {r.beta, std::max(r.err_estimate, kRound * r.beta)};
}

double epsilon_value(double beta, double f0) { return beta * beta - std::log(4.0 * beta * beta) - f0; }

// d epsilon / d beta = 2 beta - 2 / beta
double epsilon_err(const BetaValue& b) { return std::abs(2.0 * b.beta - 2.0 / b.beta) * b.err; }

double f1_value() { return 5.0 - std::log(5.0); }

void require_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw DomainError(fmt::format("{}: empty grid", what));
  for (const double x : grid) {
    if (!std::isfinite(x)) throw DomainError(fmt::format("{}: non-finite grid value", what));
  }
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Status classify(double margin, double err_estimate) {
  if (!std::isfinite(margin) || !std::isfinite(err_estimate)) return Status::kFail;
  if (margin > 10.0 * err_estimate) return Status::kPass;
  if (margin < -10.0 * err_estimate) return Status::kFail;
  return Status::kInconclusive;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi >= lo) || per_decade < 1) throw DomainError("log_grid: need 0 < lo <= hi, per_decade >= 1");
  if (hi == lo) return {lo};
  const int n = std::max(1, static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))));
  std::vector<double> g(n + 1);
  for (int k = 0; k <= n; ++k) g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / n);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_beta_grid() { return log_grid(kBetaMin * 1.001, 12.0, 64); }

std::vector<double> default_h0_grid() { return {5, 6, 8, 10, 14, 20, 40, 80, 140, 200}; }

std::vector<double> default_small_f0_grid() {
  const double f1 = f1_value();
  std::vector<double> g{1.0 + 1e-3};
  const int n = 48;
  for (int k = 1; k <= n; ++k) g.push_back(1.0 + (f1 - 1.0) * k / n);
  g.back() = f1;
  return g;
}

std::vector<double> default_remark_f0_grid() {
  std::vector<double> g;
  const double top = std::log(80.0);
  const int n = 40;
  for (int k = 0; k <= n; ++k) g.push_back(f_of_phi(0.05 + (top - 0.05) * k / n));
  g.back() = f_of_h(80.0);
  return g;
}

VerifyConfig VerifyConfig::defaults() {
  VerifyConfig c;
  c.beta_grid = default_beta_grid();
  c.h0_grid = default_h0_grid();
  c.small_f0_grid = default_small_f0_grid();
  c.remark_f0_grid = default_remark_f0_grid();
  return c;
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{
      "check_flat_small_beta", "check_prop_2_7",         "check_epsilon_positive", "check_lemma_2_9",
      "check_remark_1_19",     "check_asymptotic_C_zero", "check_lemma_2_12",       "check_theorem_1_prime"};
  return ids;
}

CheckResult check_flat_small_beta(double tol) {
  Collector c(tol);
  const double lo = kSqrtPi * kMinLatticeHeight;
  const double hi = 2.6;
  const double tail = omega(lo);
  c.less("endpoint_tail", tail, 0.02, kRound * tail, 0.02);

  const int n = 400;
  double convex_max = -INFINITY, convex_at = lo, rhs_max = -INFINITY, rhs_at = lo;
  for (int k = 0; k <= n; ++k) {
    const double beta = k == n ? hi : lo + (hi - lo) * k / n;
    const double convex = beta * beta / 3.0 - std::log(4.0 * beta * beta) + 1.0;
    const double rhs = trace_diff_beta(beta, 0.0);
    if (convex > convex_max) convex_max = convex, convex_at = beta;
    if (rhs > rhs_max) rhs_max = rhs, rhs_at = beta;
  }
  const double scale = hi * hi / 3.0 + std::log(4.0 * hi * hi) + 1.0;
  c.less("convex_part_max", convex_max, -0.04, kRound * scale, scale);
  c.less("rhs_negative_max", rhs_max, 0.0, kRound * scale / (4.0 * kPi), scale / (4.0 * kPi));
  c.metric("beta_low", lo);
  c.metric("beta_high", hi);
  c.metric("convex_max_at", convex_at);
  c.metric("rhs_max_at", rhs_at);
  return c.finish("check_flat_small_beta", "negative when beta <= 2.6");
}

CheckResult check_prop_2_7(double lambda, double f1, double tol) {
  if (!(lambda > 0.0) || !(f1 > 1.0)) throw DomainError("check_prop_2_7: need lambda > 0 and f1 > 1");
  Collector c(tol);
  const double j1 = J(f1);
  const double threshold = 2.0 * j1 / (3.0 * (f1 - 1.0));
  c.less("a_lambda_below_threshold", lambda, threshold, kRound * threshold, threshold);

  const double v = kBetaMin + lambda * std::pow(f1 - 1.0, 1.5);
  const double w = v * v - std::log(4.0 * v * v) - f1;
  const double scale_w = std::max(v * v, f1);
  c.less("b_W_positive", 0.0, w, kRound * scale_w, scale_w);

  const double dv = 1.5 * lambda * std::sqrt(f1 - 1.0);
  const double dw = (2.0 * v - 2.0 / v) * dv - 1.0;
  c.less("c_W_prime_negative", dw, 0.0, kRound * 2.0 * v * dv, std::max(1.0, 2.0 * v * dv));

  c.metric("lambda", lambda);
  c.metric("f1", f1);
  c.metric("J_f1", j1);
  c.metric("threshold", threshold);
  c.metric("V_f1", v);
  c.metric("W_f1", w);
  c.metric("W_prime_f1", dw);
  return c.finish("check_prop_2_7", "define functions V, W");
}

CheckResult check_epsilon_positive(const std::vector<double>& f0_grid, double tol) {
  require_grid(f0_grid, "check_epsilon_positive");
  const double f1 = f1_value();
  for (const double f0 : f0_grid) {
    if (!(f0 > 1.0 && f0 <= f1 * (1.0 + 1e-14))) {
      throw DomainError(fmt::format("check_epsilon_positive: f0 = {} outside (1, 5 - log 5]", f0));
    }
  }
  Collector c(tol);
  double eps_min = INFINITY, w_min = INFINITY;
  for (const double f0 : sorted(f0_grid)) {
    const BetaValue b = beta_with_error(f0, tol);
    const double eps = epsilon_value(b.beta, f0);
    eps_min = std::min(eps_min, eps);
    c.less(fmt::format("epsilon_positive f0={:.17g}", f0), 0.0, eps, epsilon_err(b), std::max(b.beta * b.beta, f0));

    const double v = kBetaMin + kLemmaLambda * std::pow(f0 - 1.0, 1.5);
    const double w = v * v - std::log(4.0 * v * v) - f0;
    w_min = std::min(w_min, w);
    c.less(fmt::format("W_positive f0={:.17g}", f0), 0.0, w, kRound * v * v, std::max(v * v, f0));
  }
  c.metric("epsilon_min", eps_min);
  c.metric("W_min", w_min);
  return c.finish("check_epsilon_positive", "Set beta_1 = beta(5 - log 5)");
}

CheckResult check_lemma_2_9(const std::vector<double>& h0_grid, double tol) {
  require_grid(h0_grid, "check_lemma_2_9");
  for (const double h0 : h0_grid) {
    if (!(h0 >= 5.0)) throw DomainError(fmt::format("check_lemma_2_9: h0 = {} is below 5", h0));
  }
  Collector c(tol);
  const double two_log2 = 2.0 * kLog2;
  const double scalar = 0.035 * (5.0 + std::log(5.0) + std::log(1.0 / 0.035));
  c.less("scalar_bound", scalar, two_log2 - 1.0, kRound, 1.0);
  const double m1 = mu_k(1, 1.0 - 0.035 / 5.0);
  c.less("mu1_sq_over_4", 0.03, m1 * m1 / 4.0, 1e-14, 0.03);
  c.metric("scalar_bound_lhs", scalar);
  c.metric("mu1_sq_over_4", m1 * m1 / 4.0);

  double eb2_min = INFINITY;
  for (const double h0 : sorted(h0_grid)) {
    const double f0 = f_of_h(h0);
    const BranchPair bp = branch_pair(f0);
    const double tau = 1.0 - bp.h_low / h0;
    const double nu1 = std::sqrt(tau) * mu_k(1, tau);
    const double nu2 = nu_k(2, tau);
    const BetaValue b = beta_with_error(f0, tol);
    const double floor = 0.03 / (b.beta * b.beta);
    const std::string at = fmt::format("h0={:.17g}", h0);

    const double a_lhs = 1.0 - bp.h_low + h0 * nu1 / (h0 - 1.0);
    c.less("a " + at, two_log2, a_lhs, 1e-14 * a_lhs, a_lhs);
    const double b_lhs = h0 * nu2 / ((h0 - 1.0) * (h0 - 1.0));
    c.less("b " + at, floor, b_lhs, 1e-14 * b_lhs + 2.0 * floor * b.err / b.beta, b_lhs);
    const double eps = epsilon_value(b.beta, f0);
    c.less("c " + at, floor, eps, epsilon_err(b), b.beta * b.beta);
    eb2_min = std::min(eb2_min, eps * b.beta * b.beta);
  }
  c.metric("epsilon_beta_sq_min", eb2_min);
  return c.finish("check_lemma_2_9", "If h_0 >= 5 then");
}

CheckResult check_remark_1_19(const std::vector<double>& f0_grid, double tol) {
  require_grid(f0_grid, "check_remark_1_19");
  const double top = f_of_h(80.0);
  for (const double f0 : f0_grid) {
    if (!(f0 > 1.0 && f0 <= top * (1.0 + 1e-14))) {
      throw DomainError(fmt::format("check_remark_1_19: f0 = {} outside (1, f(80)]", f0));
    }
  }
  Collector c(tol);
  double lo = INFINITY, hi = -INFINITY, lo_err = 0.0, hi_err = 0.0;
  double gamma_lo = INFINITY, gamma_hi = -INFINITY;
  double min_gap = INFINITY, gap_err = 0.0;
  double prev = -INFINITY, prev_err = 0.0;
  for (const double f0 : sorted(f0_grid)) {
    const BetaValue b = beta_with_error(f0, tol);
    const double h0 = branch_pair(f0).h_high;
    const double eps = epsilon_value(b.beta, f0);
    const double val = eps * h0;
    const double err = epsilon_err(b) * h0;
    if (val < lo) lo = val, lo_err = err;
    if (val > hi) hi = val, hi_err = err;
    gamma_lo = std::min(gamma_lo, eps * b.beta * b.beta);
    gamma_hi = std::max(gamma_hi, eps * b.beta * b.beta);
    if (std::isfinite(prev) && b.beta - prev < min_gap) min_gap = b.beta - prev, gap_err = b.err + prev_err;
    prev = b.beta;
    prev_err = b.err;
  }
  c.less("bracket_min_positive", 0.0, lo, lo_err, std::max(1.0, lo));
  c.less("bracket_max_below_cap", hi, 10.0, hi_err, std::max(1.0, hi));
  if (std::isfinite(min_gap)) c.less("beta_monotone", 0.0, min_gap, gap_err, prev);
  c.metric("epsilon_e_phi0_min", lo);
  c.metric("epsilon_e_phi0_max", hi);
  c.metric("epsilon_beta_sq_min", gamma_lo);
  c.metric("epsilon_beta_sq_max", gamma_hi);
  return c.finish("check_remark_1_19", "The precise version is");
}

CheckResult check_asymptotic_C_zero(const std::vector<double>& h0_grid, double tol) {
  require_grid(h0_grid, "check_asymptotic_C_zero");
  for (const double h0 : h0_grid) {
    if (!(h0 >= 10.0 && h0 <= 200.0)) {
      throw DomainError(fmt::format("check_asymptotic_C_zero: h0 = {} outside [10, 200]", h0));
    }
  }
  Collector c(tol);
  double prev_br = INFINITY, prev_br_err = 0.0, prev_gap = INFINITY, prev_gap_err = 0.0;
  for (const double h0 : sorted(h0_grid)) {
    const double f0 = f_of_h(h0);
    const BetaValue b = beta_with_error(f0, tol);
    const double b2 = b.beta * b.beta;
    const double m = mass_of_excess(f0 - 1.0);
    const double r = m + b2 / 3.0 - std::log(4.0 * b2) + 1.0;
    const double scale = std::abs(m) + b2 / 3.0 + std::log(4.0 * b2) + 1.0;
    const double r_err = 1e-13 * std::abs(m) + (2.0 * b.beta / 3.0 + 2.0 / b.beta) * b.err;
    const std::string at = fmt::format("h0={:.17g}", h0);
    c.less("abs_R_beta_sq_bounded " + at, std::abs(r) * b2, 5.0, r_err * b2, scale * b2);
    c.less("R_beta_sq_upper " + at, r * b2, -0.01, r_err * b2, scale * b2);
    const double br = std::abs(b.beta * r);
    const double br_err = r_err * b.beta;
    if (std::isfinite(prev_br)) c.less("abs_beta_R_decreasing " + at, br, prev_br, br_err + prev_br_err, scale * b.beta);
    const double gap = b2 - h0 - 2.0 * kLog2;
    const double gap_err = 2.0 * b.beta * b.err;
    if (std::isfinite(prev_gap)) c.less("beta_sq_gap_decreasing " + at, std::abs(gap), std::abs(prev_gap), gap_err + prev_gap_err, b2);
    c.metric("R_beta_sq " + at, r * b2);
    c.metric("beta_sq_gap " + at, gap);
    prev_br = br;
    prev_br_err = br_err;
    prev_gap = gap;
    prev_gap_err = gap_err;
  }
  return c.finish("check_asymptotic_C_zero", "where C is the constant of integration");
}

CheckResult check_lemma_2_12(double C, double beta1, double tol) {
  if (!(C > 0.0) || !(beta1 > 1.0 / kSqrt2)) throw DomainError("check_lemma_2_12: need C > 0 and beta1 > 1/sqrt(2)");
  Collector c(tol);
  const double w1 = omega(beta1);
  const double bound1 = C / (beta1 * beta1);
  c.less("omega_at_beta1", w1, bound1, kRound * w1, bound1);

  // Corroborating grid: report the point with the least relative margin.
  const double top = std::max(beta1, 12.0);
  const auto grid = log_grid(beta1, top, 1000);
  double worst_ratio = INFINITY, worst_beta = beta1, worst_w = 0.0, worst_bound = 1.0;
  for (const double beta : grid) {
    const double w = omega(beta);
    const double bound = C / (beta * beta);
    const double ratio = (bound - w) / bound;
    if (ratio < worst_ratio) worst_ratio = ratio, worst_beta = beta, worst_w = w, worst_bound = bound;
  }
  c.less(fmt::format("grid_worst beta={:.17g}", worst_beta), worst_w, worst_bound, kRound * worst_w, worst_bound);
  c.metric("grid_points", static_cast<double>(grid.size()));
  c.metric("omega_beta1", w1);
  c.metric("bound_beta1", bound1);
  return c.finish("check_lemma_2_12", "Then it holds for all");
}

CheckResult check_theorem_1_prime(const std::vector<double>& b_grid, int n_samples, double tol) {
  require_grid(b_grid, "check_theorem_1_prime");
  for (const double b : b_grid) {
    if (!(b > kPeriodMin)) throw DomainError(fmt::format("check_theorem_1_prime: b = {} <= sqrt(pi/2)", b));
  }
  Collector c(tol);
  double worst_scaled = -INFINITY;
  for (const double b : sorted(b_grid)) {
    const ProfileSolution sol = solve_profile(b, n_samples);
    const double m = mass_M(sol);
    const double beta = sol.beta;
    const double b2 = beta * beta;
    const double lhs = m + b2 / 3.0 - std::log(4.0 * b2) + 1.0 + omega(beta);
    const double scale = std::abs(m) + b2 / 3.0 + std::log(4.0 * b2) + 1.0;
    const double err = 1e-13 * scale;
    const std::string at = fmt::format("b={:.17g}", b);
    c.less("lhs_negative " + at, lhs, 0.0, err, scale);
    c.less("lhs_scaled " + at, lhs, -0.008 / b2, err, scale);
    worst_scaled = std::max(worst_scaled, lhs * b2);
  }
  c.metric("max_lhs_beta_sq", worst_scaled);
  return c.finish("check_theorem_1_prime", "which we write as");
}

VerificationReport full_chain(const VerifyConfig& config) {
  const auto& ids = check_ids();
  for (const auto& id : config.only) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
      throw DomainError(fmt::format("unknown check id '{}'", id));
    }
  }
  if (!(config.tol > 0.0 && config.tol < 1.0)) throw DomainError("tol must lie in (0, 1)");
  const auto selected = [&](const std::string& id) {
    return config.only.empty() || std::find(config.only.begin(), config.only.end(), id) != config.only.end();
  };

  std::vector<double> asymptotic_grid;
  for (const double h0 : config.h0_grid) {
    if (h0 >= 10.0) asymptotic_grid.push_back(h0);
  }
  std::vector<double> b_grid;
  for (const double beta : config.beta_grid) b_grid.push_back(beta / kSqrtPi);

  VerificationReport rep;
  const double tol = config.tol;
  for (const auto& id : ids) {
    if (!selected(id)) continue;
    if (id == "check_flat_small_beta") rep.checks.push_back(check_flat_small_beta(tol));
    if (id == "check_prop_2_7") rep.checks.push_back(check_prop_2_7(config.lambda, f1_value(), tol));
    if (id == "check_epsilon_positive") rep.checks.push_back(check_epsilon_positive(config.small_f0_grid, tol));
    if (id == "check_lemma_2_9") rep.checks.push_back(check_lemma_2_9(config.h0_grid, tol));
    if (id == "check_remark_1_19") rep.checks.push_back(check_remark_1_19(config.remark_f0_grid, tol));
    if (id == "check_asymptotic_C_zero") rep.checks.push_back(check_asymptotic_C_zero(asymptotic_grid, tol));
    if (id == "check_lemma_2_12") rep.checks.push_back(check_lemma_2_12(config.C, kBetaMin, tol));
    if (id == "check_theorem_1_prime") rep.checks.push_back(check_theorem_1_prime(b_grid, config.n_samples, tol));
  }

  bool any_fail = false, any_inconclusive = false;
  for (const auto& ch : rep.checks) {
    any_fail |= ch.status == Status::kFail;
    any_inconclusive |= ch.status == Status::kInconclusive;
  }
  rep.overall = any_fail ? Status::kFail : any_inconclusive ? Status::kInconclusive : Status::kPass;
  if (rep.checks.empty()) rep.overall = Status::kInconclusive;

  Json only = Json::array();
  for (const auto& id : config.only) only.push(id);
  rep.provenance = Json::object()
                       .set("tol", config.tol)
                       .set("n_samples", config.n_samples)
                       .set("lambda", config.lambda)
                       .set("C", config.C)
                       .set("beta_grid", Json::array_of(config.beta_grid))
                       .set("h0_grid", Json::array_of(config.h0_grid))
                       .set("small_f0_grid", Json::array_of(config.small_f0_grid))
                       .set("remark_f0_grid", Json::array_of(config.remark_f0_grid))
                       .set("only", std::move(only));
  return rep;
}

Json to_json(const CheckResult& c) {
  Json details = Json::array();
  for (const auto& s : c.details) {
    details.push(Json::object()
                     .set("name", s.name)
                     .set("lhs", s.lhs)
                     .set("rhs", s.rhs)
                     .set("margin", s.margin)
                     .set("err_estimate", s.err_estimate)
                     .set("status", to_string(s.status)));
  }
  Json metrics = Json::object();
  for (const auto& [k, v] : c.metrics) metrics.set(k, v);
  return Json::object()
      .set("id", c.id)
      .set("lhs", c.lhs)
      .set("rhs", c.rhs)
      .set("margin", c.margin)
      .set("err_estimate", c.err_estimate)
      .set("status", to_string(c.status))
      .set("paper_ref", c.paper_ref)
      .set("details", std::move(details))
      .set("metrics", std::move(metrics));
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push(to_json(c));
  return Json::object().set("config", r.provenance).set("checks", std::move(checks)).set("overall", to_string(r.overall));
}

}  // namespace torusmass
