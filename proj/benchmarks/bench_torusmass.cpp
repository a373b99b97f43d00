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

#include <benchmark/benchmark.h>

#include "torusmass/branches.hpp"
#include "torusmass/period.hpp"
#include "torusmass/profile.hpp"
#include "torusmass/spectral.hpp"

namespace torusmass {
namespace {

void BM_BranchPair(benchmark::State& state) {
  double f = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(branch_pair(f));
    f = f < 1e5 ? f * 1.01 : 1.5;
  }
}
BENCHMARK(BM_BranchPair);

void BM_BetaOfF0(benchmark::State& state) {
  const double f0 = f_of_h(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(beta_of_f0(f0));
}
BENCHMARK(BM_BetaOfF0)->Arg(2)->Arg(5)->Arg(20)->Arg(200);

void BM_DbetaDf0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dbeta_df0(5.0 - std::log(5.0)));
}
BENCHMARK(BM_DbetaDf0);

void BM_MassOfExcess(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mass_of_excess(4.0 - std::log(5.0)));
}
BENCHMARK(BM_MassOfExcess);

void BM_SolveProfile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_profile(2.0, n));
}
BENCHMARK(BM_SolveProfile)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_RkOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rk_oracle(std::log(5.0), 1e-10));
}
BENCHMARK(BM_RkOracle);

void BM_SeriesTables(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_series_tables(8));
}
BENCHMARK(BM_SeriesTables)->Unit(benchmark::kMillisecond);

void BM_TraceFlat(benchmark::State& state) {
  const FlatTorus t = FlatTorus::make(0.3, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(trace_flat(t));
}
BENCHMARK(BM_TraceFlat);

void BM_EpsteinOracle(benchmark::State& state) {
  const FlatTorus t = FlatTorus::make(0.3, 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(epstein_constant_oracle(t));
}
BENCHMARK(BM_EpsteinOracle);

void BM_Omega(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(omega(2.2214414690791831));
}
BENCHMARK(BM_Omega);

}  // namespace
}  // namespace torusmass

BENCHMARK_MAIN();
