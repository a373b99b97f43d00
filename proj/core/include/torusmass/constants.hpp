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

#include <numbers>

namespace torusmass {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrtPi = 1.7724538509055160272981674833411452;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kLog2 = std::numbers::ln2;

// Euler-Mascheroni constant; Gamma'(1) = -kEulerGamma.
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kDigammaOne = -kEulerGamma;

// beta -> pi/sqrt(2) is the small-amplitude limit of the period map.
inline constexpr double kBetaMin = kPi / kSqrt2;

// Smallest period sqrt(pi/2) of a nontrivial solution of phi'' = 8 pi (1 - e^phi).
inline constexpr double kPeriodMin = kBetaMin / kSqrtPi;

// (3/4)^{1/4}: lower edge of the normalized fundamental domain for b.
inline constexpr double kMinLatticeHeight = 0.93060485910209959893;

}  // namespace torusmass
