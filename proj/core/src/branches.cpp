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

#include "torusmass/branches.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "torusmass/error.hpp"

namespace torusmass {
namespace {

constexpr int kSeriesTerms = 40;
using Series = std::array<double, kSeriesTerms>;

// |phi| below which the j-functions are summed from their Taylor series.
// The nearest singularity is at 2 pi i, so 32 terms reach full precision.
constexpr double kSeriesRadius = 0.5;
constexpr int kEvalTerms = 32;

Series mul(const Series& a, const Series& b) {
  Series c{};
  for (int k = 0; k < kSeriesTerms; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    c[k] = s;
  }
  return c;
}

Series reciprocal(const Series& a) {
  Series r{};
  r[0] = 1.0 / a[0];
  for (int k = 1; k < kSeriesTerms; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += a[i] * r[k - i];
    r[k] = -s / a[0];
  }
  return r;
}

// Requires a[0] == 1.
Series sqrt_unit(const Series& a) {
  Series s{};
  s[0] = 1.0;
  for (int k = 1; k < kSeriesTerms; ++k) {
    double acc = a[k];
    for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
    s[k] = acc / 2.0;
  }
  return s;
}

// Taylor coefficients of
//   jfun(phi) = 1/expm1(phi) - 1/s(phi),      s = sign(phi) sqrt(2 (e^phi - 1 - phi))
//   phi * djdf(phi) = phi * (1/s^3 - e^phi / expm1(phi)^3)
// Both are analytic at phi = 0 once s is written as phi * sqrt(R(phi)).
struct JSeries {
  Series value{};
  Series slope{};

  JSeries() {
    Series expm1_over{}, r{}, exp_s{};
    double fact = 1.0;  // k!
    for (int k = 0; k < kSeriesTerms; ++k) {
      exp_s[k] = 1.0 / fact;
      expm1_over[k] = 1.0 / (fact * (k + 1));
      r[k] = 2.0 / (fact * (k + 1) * (k + 2));
      fact *= (k + 1);
    }
    const Series a = reciprocal(expm1_over);    // phi / expm1(phi)
    const Series b = reciprocal(sqrt_unit(r));  // phi / s(phi)
    for (int k = 0; k + 1 < kSeriesTerms; ++k) value[k] = a[k + 1] - b[k + 1];
    const Series a3 = mul(mul(a, a), a);
    const Series b3 = mul(mul(b, b), b);
    const Series ea3 = mul(exp_s, a3);
    // (b^3 - e^phi a^3) / phi^3 = slope / phi with the first two terms zero.
    for (int k = 0; k + 2 < kSeriesTerms; ++k) slope[k] = b3[k + 2] - ea3[k + 2];
  }
};

const JSeries& j_series() {
  static const JSeries series;
  return series;
}

double horner(const Series& c, double x, int n) {
  double s = 0.0;
  for (int k = n - 1; k >= 0; --k) s = s * x + c[k];
  return s;
}

double signed_root_excess(double phi) {
  const double s = std::sqrt(2.0 * excess_of_phi(phi));
  return phi < 0.0 ? -s : s;
}

double jfun(double phi) {
  if (std::abs(phi) < kSeriesRadius) return horner(j_series().value, phi, kEvalTerms);
  return 1.0 / std::expm1(phi) - 1.0 / signed_root_excess(phi);
}

double jslope(double phi) {
  if (std::abs(phi) < kSeriesRadius) return horner(j_series().slope, phi, kEvalTerms) / phi;
  const double e = std::expm1(phi);
  const double s = signed_root_excess(phi);
  return 1.0 / (s * s * s) - std::exp(phi) / (e * e * e);
}

// Solves e^phi - 1 - phi = d on [lo, hi] by Newton's method, bisecting
// whenever a step leaves the current bracket. g is increasing on the high
// branch and decreasing on the low branch.
double solve_branch(double d, double guess, double lo, double hi) {
  double x = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double g = excess_of_phi(x) - d;
    if (g == 0.0) return x;
    const double slope = std::expm1(x);
    // Shrink the bracket: root lies where g changes sign.
    if ((g > 0.0) == (slope > 0.0)) {
      hi = x;
    } else {
      lo = x;
    }
    double next = (slope != 0.0) ? x - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(x) || hi - lo <= 0.0) {
      return x;
    }
  }
  return x;
}

double initial_high(double d) {
  if (d < 0.5) {
    const double s = std::sqrt(2.0 * d);
    return s - s * s / 3.0;
  }
  const double f = 1.0 + d;
  return std::log(f + std::log(f + 1.0));
}

double initial_low(double d) {
  if (d < 0.5) {
    const double s = std::sqrt(2.0 * d);
    return -s - s * s / 3.0;
  }
  return -(1.0 + d);
}

struct Roots {
  double high;
  double low;
};

Roots solve_roots(double d) {
  if (d == 0.0) return {0.0, 0.0};
  const double f = 1.0 + d;
  const double high = solve_branch(d, initial_high(d), 0.0, std::log(2.0 * f));
  const double low = solve_branch(d, initial_low(d), -f, std::min(0.0, -d));
  return {high, low};
}

void require_excess(double d, const char* what) {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw DomainError(fmt::format("{}: f must satisfy f >= 1 (got f - 1 = {})", what, d));
  }
}

}  // namespace

double f_of_phi(double phi) {
  if (!std::isfinite(phi) || phi > 709.0) {
    throw DomainError(fmt::format("f_of_phi: phi = {} out of range", phi));
  }
  return std::exp(phi) - phi;
}

double f_of_h(double h) {
  if (!(h > 0.0)) throw DomainError(fmt::format("f_of_h: h must be positive (got {})", h));
  return h - std::log(h);
}

double excess_of_phi(double phi) {
  if (std::abs(phi) < 0.5) {
    // phi^2/2 + phi^3/6 + ... ; 22 terms reach machine precision at |phi| = 0.5.
    double term = phi * phi / 2.0;
    double s = term;
    for (int k = 3; k < 25; ++k) {
      term *= phi / k;
      s += term;
    }
    return s;
  }
  return std::expm1(phi) - phi;
}

BranchPair branch_pair_from_excess(double excess) {
  require_excess(excess, "branch_pair");
  BranchPair p;
  p.f0 = 1.0 + excess;
  if (excess <= kDegenerateExcess) return p;
  const Roots r = solve_roots(excess);
  p.phi_high = r.high;
  p.phi_low = r.low;
  p.h_high = std::exp(r.high);
  p.h_low = std::exp(r.low);
  return p;
}

BranchPair branch_pair(double f0) {
  if (!(f0 >= 1.0) || !std::isfinite(f0)) {
    throw DomainError(fmt::format("branch_pair: f0 must satisfy f0 >= 1 (got {})", f0));
  }
  BranchPair p = branch_pair_from_excess(f0 - 1.0);
  p.f0 = f0;
  return p;
}

double h_low_series(double f, int terms) {
  if (!(f >= 2.0)) {
    throw DomainError(fmt::format("h_low_series: oracle validated only for f >= 2 (got {})", f));
  }
  if (terms < 1) throw DomainError("h_low_series: terms must be >= 1");
  double sum = 0.0;
  for (int j = 0; j < terms; ++j) {
    const double log_term =
        (j - 1) * std::log(j + 1.0) - std::lgamma(j + 1.0) - (j + 1) * f;
    sum += std::exp(log_term);
  }
  return sum;
}

JPair j_variables_from_excess(double excess) {
  require_excess(excess, "j_variables");
  if (excess == 0.0) {
    throw DomainError("j_variables: f = 1 is a removable singularity; use kJHighAtOne/kJLowAtOne");
  }
  const Roots r = solve_roots(excess);
  return {jfun(r.high), -jfun(r.low)};
}

JPair j_variables(double f) {
  if (!(f > 1.0)) throw DomainError(fmt::format("j_variables: f must satisfy f > 1 (got {})", f));
  return j_variables_from_excess(f - 1.0);
}

double J_from_excess(double excess) {
  require_excess(excess, "J");
  if (excess == 0.0) return 0.0;
  const JPair j = j_variables_from_excess(excess);
  return j.j_high + j.j_low;
}

double J(double f) {
  if (!(f >= 1.0)) throw DomainError(fmt::format("J: f must satisfy f >= 1 (got {})", f));
  return J_from_excess(f - 1.0);
}

double J_prime_from_excess(double excess) {
  require_excess(excess, "J_prime");
  if (excess == 0.0) return std::numeric_limits<double>::infinity();
  const Roots r = solve_roots(excess);
  return jslope(r.high) - jslope(r.low);
}

}  // namespace torusmass
