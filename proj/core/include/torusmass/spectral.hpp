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

// Green-function traces of flat unit-area tori and of the round sphere.
//
// A torus is the quotient of C by the lattice spanned by 1/b and a + ib; its
// dual lattice is spanned by u = -i/b and v = b - ai and z = v/u = ab + ib^2.

#include <complex>
#include <optional>

namespace torusmass {

struct FlatTorus {
  double a = 0.0;
  double b = 1.0;
  std::complex<double> u;
  std::complex<double> v;
  std::complex<double> z;

  // Rejects b < (3/4)^{1/4}, the lowest point of the fundamental domain.
  static FlatTorus make(double a, double b);
};

struct EtaEvaluation {
  std::complex<double> value;
  double log_abs = 0.0;  // log |eta(z)|, accurate even where |eta| underflows
  int terms = 0;         // product factors used
  double remainder_bound = 0.0;  // bound on the dropped part of log |eta|
};

// Product expansion truncated at the first n with |q|^n < 1e-18, q = e^{2 pi i z}.
// Throws DomainError for Im z <= 0 and PrecisionError when the remainder
// bound exceeds tol.
EtaEvaluation eta_evaluate(std::complex<double> z, double tol = 1e-15);
std::complex<double> dedekind_eta(std::complex<double> z, double tol = 1e-15);

// log(|eta(z)|^4 / |u|^2) = 4 log |eta(z)| + 2 log b
double log_eta4_over_u2(const FlatTorus& t);

double trace_flat(const FlatTorus& t);

// Trace of the inverse Laplacian on the round sphere of the given area.
double sphere_trace(double area);

// trace_flat - sphere_trace(1) expressed through beta = sqrt(pi) b.
double trace_diff_beta(double beta, double a);

// -4 sum_{n>=1} log(1 - e^{-2 n beta^2})
double omega(double beta);

// Lowest nonzero eigenvalue 4 pi^2 / b^2 of the rectangular-direction mode;
// valid for b > 1.
double lambda1(double b);

// Independent evaluation of trace_flat: Ewald splitting of the Epstein zeta
// function of the dual lattice, continued to s = 1.
double epstein_constant_oracle(const FlatTorus& t);

struct SpectralReport {
  double a = 0.0;
  double b = 0.0;
  double beta = 0.0;
  double trace = 0.0;
  double sphere_trace = 0.0;
  double diff = 0.0;
  double omega = 0.0;
  std::optional<double> lambda1;
};

SpectralReport spectral_report(double a, double b);

}  // namespace torusmass
