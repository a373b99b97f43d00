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

// Periodic solutions of phi'' = 8 pi (1 - e^phi) with period b, i.e. the
// conformal factor of the constant-Robin-mass metric e^phi |dz|^2 on the
// unit-area torus, plus the functionals evaluated on them.

#include <filesystem>
#include <vector>

namespace torusmass {

struct ProfileSample {
  double y;
  double phi;
};

struct ProfileSolution {
  double b = 0.0;
  double beta = 0.0;       // sqrt(pi) * b
  double phi0 = 0.0;       // max of phi, attained at y = 0
  double f0 = 1.0;         // e^phi0 - phi0
  double f0_excess = 0.0;  // f0 - 1, kept separately for small amplitudes
  double phi_low = 0.0;    // min of phi, attained at y = b/2
  // n + 1 samples on the closed interval [0, b], y_i = i b / n.
  std::vector<ProfileSample> samples;
  double M = 0.0;       // mass functional from the phi-integral
  double M_grid = 0.0;  // same functional from the samples
  double epsilon = 0.0;
  double ode_residual = 0.0;
  // |(1/b) int_0^b e^phi dy - 1| on the sample grid.
  double area_defect = 0.0;
};

inline constexpr int kDefaultSamples = 1024;
inline constexpr int kMinSamples = 64;

// Throws DomainError for b <= sqrt(pi/2) (only phi = 0 has that period) and
// PrecisionError if the amplitude search fails.
ProfileSolution solve_profile(double b, int n_samples = kDefaultSamples);

// The profile with prescribed amplitude, f0 = 1 + excess.
ProfileSolution solve_profile_from_excess(double excess, int n_samples = kDefaultSamples);

// Amplitude f0 - 1 of the solution with beta = sqrt(pi) b.
double excess_for_beta(double beta);

// (1/(4 beta)) int_{phi_*}^{phi0} phi (1 + e^phi) / sqrt(f0 - f(phi)) dphi,
// computed from the amplitude alone.
double mass_of_excess(double excess);

// Returns sol.M after checking it against the grid route; throws
// PrecisionError if they differ by more than 1e-4.
double mass_M(const ProfileSolution& sol);

// 1/2 int_0^1 rho (1 + e^rho) ds over the samples, rho(s) = phi(b s / 2).
double mass_from_samples(const std::vector<ProfileSample>& samples);

// beta^2 - log(4 beta^2) - f0
double epsilon_of(const ProfileSolution& sol);

struct IdentityPair {
  double lhs;
  double rhs;
};

// lhs = 1/2 int_0^1 rho (3 - e^rho) ds on the grid, rhs = 1 - f0.
IdentityPair dM_dbeta_identity(const ProfileSolution& sol);

// CSV with header "y,phi,h" (h = e^phi), 17 significant digits, written
// atomically. Throws IoError.
void export_profile(const ProfileSolution& sol, const std::filesystem::path& path);
std::vector<ProfileSample> import_profile(const std::filesystem::path& path);

struct RkSample {
  double t;
  double phi;
  double dphi;
};

struct RkResult {
  double period = 0.0;  // twice the first return time to phi' = 0
  double half_period = 0.0;
  std::vector<RkSample> samples;  // accepted steps on [0, half_period]
  // max |E - f0| / max(1, f0) with E = phi'^2 / (16 pi) + f(phi)
  double max_energy_drift = 0.0;
  int steps = 0;
  int rejected = 0;
};

// Dormand-Prince 5(4) integration from (phi0, 0). phi0 in (0, 50]. Throws
// PrecisionError on step-size collapse.
RkResult rk_oracle(double phi0, double step_tol);

}  // namespace torusmass
