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

#include "torusmass/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "torusmass/constants.hpp"
#include "torusmass/error.hpp"
#include "torusmass/quadrature.hpp"

namespace torusmass {
namespace {

constexpr double kTruncation = 1e-18;

// log |1 - w| without cancellation for small w.
double log_abs_one_minus(std::complex<double> w) {
  return 0.5 * std::log1p(std::norm(w) - 2.0 * w.real());
}

// -4 sum_n log |1 - q^n| for |q| = e^{-2 beta^2}, arg q = theta.
double tail_sum(double beta, double theta) {
  const double x = 2.0 * beta * beta;
  quad::KahanSum s;
  for (int n = 1;; ++n) {
    const double mag = std::exp(-n * x);
    const std::complex<double> w = std::polar(mag, n * theta);
    const double term = -4.0 * log_abs_one_minus(w);
    s.add(term);
    if (mag < kTruncation || n > 1'000'000) break;
  }
  return s.value();
}

}  // namespace

FlatTorus FlatTorus::make(double a, double b) {
  if (!std::isfinite(a)) throw DomainError("torus: a must be finite");
  if (!(b >= kMinLatticeHeight) || !std::isfinite(b)) {
    throw DomainError(fmt::format("torus: b = {} is below (3/4)^(1/4) = {}", b, kMinLatticeHeight));
  }
  FlatTorus t;
  t.a = a;
  t.b = b;
  t.u = {0.0, -1.0 / b};
  t.v = {b, -a};
  t.z = {a * b, b * b};
  return t;
}

EtaEvaluation eta_evaluate(std::complex<double> z, double tol) {
  if (!(z.imag() > 0.0)) throw DomainError(fmt::format("eta: Im z must be positive (got {})", z.imag()));
  const double qabs = std::exp(-2.0 * kPi * z.imag());
  const double theta = 2.0 * kPi * z.real();
  EtaEvaluation e;
  quad::KahanSum log_abs;
  double arg = kPi * z.real() / 12.0;
  log_abs.add(-kPi * z.imag() / 12.0);
  double mag = 1.0;
  for (int n = 1; n <= 10'000'000; ++n) {
    mag *= qabs;
    const std::complex<double> w = std::polar(mag, n * theta);
    log_abs.add(log_abs_one_minus(w));
    arg += std::arg(1.0 - w);
    e.terms = n;
    if (mag < kTruncation) break;
  }
  // |log|1 - w|| <= 2|w| for |w| <= 1/2, summed geometrically.
  e.remainder_bound = qabs < 0.5 ? 2.0 * mag * qabs / (1.0 - qabs) : INFINITY;
  if (!(e.remainder_bound <= tol)) {
    throw PrecisionError(fmt::format("eta: truncation remainder {} exceeds tol {}", e.remainder_bound, tol));
  }
  e.log_abs = log_abs.value();
  e.value = std::polar(std::exp(e.log_abs), arg);
  return e;
}

std::complex<double> dedekind_eta(std::complex<double> z, double tol) {
  return eta_evaluate(z, tol).value;
}

double log_eta4_over_u2(const FlatTorus& t) {
  return 4.0 * eta_evaluate(t.z).log_abs + 2.0 * std::log(t.b);
}

double trace_flat(const FlatTorus& t) {
  return -std::log(2.0 * kPi) / (2.0 * kPi) - log_eta4_over_u2(t) / (4.0 * kPi);
}

double sphere_trace(double area) {
  if (!(area > 0.0)) throw DomainError(fmt::format("sphere_trace: area must be positive (got {})", area));
  const double m1 = -std::log(kPi) / (4.0 * kPi) - 1.0 / (4.0 * kPi);
  return area * (m1 + std::log(area) / (4.0 * kPi));
}

double trace_diff_beta(double beta, double a) {
  const double beta_min = kSqrtPi * kMinLatticeHeight;
  if (!(beta >= beta_min)) {
    throw DomainError(fmt::format("trace_diff_beta: beta = {} is below sqrt(pi) (3/4)^(1/4) = {}", beta, beta_min));
  }
  const double b2 = beta * beta;
  // e^{-2n(beta^2 - i sqrt(pi) beta a)} has phase 2 n sqrt(pi) beta a.
  const double theta = 2.0 * kSqrtPi * beta * a;
  return (b2 / 3.0 - std::log(4.0 * b2) + 1.0 + tail_sum(beta, theta)) / (4.0 * kPi);
}

double omega(double beta) {
  if (!(beta > 0.0)) throw DomainError(fmt::format("omega: beta must be positive (got {})", beta));
  const double x = 2.0 * beta * beta;
  quad::KahanSum s;
  for (int n = 1; n <= 1'000'000; ++n) {
    const double q = std::exp(-n * x);
    const double term = -4.0 * std::log1p(-q);
    s.add(term);
    if (q < kTruncation || term < kTruncation * s.value()) break;
  }
  return s.value();
}

double lambda1(double b) {
  if (!(b > 1.0)) throw DomainError(fmt::format("lambda1: formula requires b > 1 (got {})", b));
  return 4.0 * kPi * kPi / (b * b);
}

double epstein_constant_oracle(const FlatTorus& t) {
  // Direct lattice r = (m/b + n(a + ib)) / (2 pi), dual k = 2 pi (m u + n v).
  const double r11 = 1.0 / t.b / (2.0 * kPi), r21 = t.a / (2.0 * kPi), r22 = t.b / (2.0 * kPi);
  const double k11 = 0.0, k12 = -2.0 * kPi / t.b, k21 = 2.0 * kPi * t.b, k22 = -2.0 * kPi * t.a;
  const auto sigma_min = [](double p, double q, double r, double s) {
    // smallest singular value of [[p, q], [r, s]]
    const double fro = p * p + q * q + r * r + s * s;
    const double det = std::abs(p * s - q * r);
    return std::sqrt(std::max(0.0, 0.5 * (fro - std::sqrt(std::max(0.0, fro * fro - 4.0 * det * det)))));
  };
  const double sr = sigma_min(r11, 0.0, r21, r22);
  const double sk = sigma_min(k11, k12, k21, k22);

  const double covol = 4.0 * kPi * kPi;  // area of the dual lattice in k units
  const double alpha = 1.0 / (4.0 * kPi);
  const double c = kPi / covol;

  quad::KahanSum real_space, dual_space;
  for (int shell = 1; shell <= 10'000; ++shell) {
    quad::KahanSum rs, ks;
    for (int m = -shell; m <= shell; ++m) {
      for (int n = -shell; n <= shell; ++n) {
        if (std::max(std::abs(m), std::abs(n)) != shell) continue;
        const double rx = m * r11 + n * r21, ry = n * r22;
        const double r2 = rx * rx + ry * ry;
        rs.add(-std::expint(-kPi * kPi * r2 / alpha));
        const double kx = m * k11 + n * k21, ky = m * k12 + n * k22;
        const double k2 = kx * kx + ky * ky;
        ks.add(std::exp(-alpha * k2) / k2);
      }
    }
    real_space.add(rs.value());
    dual_space.add(ks.value());
    // Every later shell has radius >= sigma * shell and at most 8(shell + j) points.
    const double rr = sr * (shell + 1), kk = sk * (shell + 1);
    const double r_bound = 8.0 * (shell + 1) * std::exp(-kPi * kPi * rr * rr / alpha) * 2.0;
    const double k_bound = 8.0 * (shell + 1) * std::exp(-alpha * kk * kk) / (kk * kk) * 2.0;
    if (c * r_bound < 1e-17 && k_bound < 1e-17) break;
    if (shell == 10'000) throw PrecisionError("epstein oracle: lattice sums did not converge");
  }
  const double z1 = c * (std::log(alpha) + kEulerGamma) - alpha + c * real_space.value() + dual_space.value();
  return z1 + (kLog2 + kDigammaOne) / (2.0 * kPi);
}

SpectralReport spectral_report(double a, double b) {
  const FlatTorus t = FlatTorus::make(a, b);
  SpectralReport r;
  r.a = a;
  r.b = b;
  r.beta = kSqrtPi * b;
  r.trace = trace_flat(t);
  r.sphere_trace = sphere_trace(1.0);
  r.diff = r.trace - r.sphere_trace;
  r.omega = omega(r.beta);
  if (b > 1.0) r.lambda1 = lambda1(b);
  return r;
}

}  // namespace torusmass
