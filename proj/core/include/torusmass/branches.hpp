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

// The scalar function f(phi) = e^phi - phi, its two inverse branches and the
// regularized Jacobian J = j^* + j_* of the period integral.
//
// Internally everything near f = 1 is parameterized by the excess
// d = f - 1 >= 0, which the callers in the period and profile modules can
// form without cancellation.

namespace torusmass {

struct BranchPair {
  double f0 = 1.0;
  double phi_low = 0.0;   // phi_* <= 0
  double phi_high = 0.0;  // phi^* >= 0
  double h_low = 1.0;     // e^{phi_*} in (0, 1]
  double h_high = 1.0;    // e^{phi^*} >= 1
};

// Limits of j^* and j_* as f -> 1+. The defining expressions are 0/0 there.
inline constexpr double kJHighAtOne = -1.0 / 3.0;
inline constexpr double kJLowAtOne = 1.0 / 3.0;

// Below this excess branch_pair returns phi_low = phi_high = 0.
inline constexpr double kDegenerateExcess = 1e-13;

double f_of_phi(double phi);

// f evaluated at phi = log h, i.e. h - log h.
double f_of_h(double h);

// e^phi - 1 - phi without cancellation near phi = 0.
double excess_of_phi(double phi);

BranchPair branch_pair(double f0);
BranchPair branch_pair_from_excess(double excess);

// Tree-function series sum_{j>=0} (j+1)^{j-1}/j! e^{-(j+1) f}, an
// independent route to h_* for f >= 2.
double h_low_series(double f, int terms);

struct JPair {
  double j_high;  // 1/(h^* - 1) - 1/sqrt(2(f - 1))
  double j_low;   // 1/(1 - h_*) - 1/sqrt(2(f - 1))
};

JPair j_variables(double f);
JPair j_variables_from_excess(double excess);

// J(f) = j^* + j_*, with J(1) = 0.
double J(double f);
double J_from_excess(double excess);

// dJ/df, evaluated analytically along both branches. Behaves like
// (f - 1)^{-1/2} / (6 sqrt 2) as f -> 1+.
double J_prime_from_excess(double excess);

}  // namespace torusmass
