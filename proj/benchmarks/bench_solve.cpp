// Copyright 2026 The mclear Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "mclear/oracle.hpp"
#include "mclear/random_instances.hpp"
#include "mclear/scarf.hpp"
#include "mclear/search.hpp"

namespace {

using namespace mclear;

void BM_SolveFixed(benchmark::State& state) {
  const MarketInstance inst = scarf_ramped(60.0, 0.1, 0.1, baseline_dispatch());
  Commitment z(15, 0);
  z[0] = z[1] = z[2] = z[5] = z[6] = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fixed(inst, z));
  }
}
BENCHMARK(BM_SolveFixed);

void BM_EnumerateScarf(benchmark::State& state) {
  const MarketInstance inst = scarf_ramped(
      static_cast<double>(state.range(0)), 0.1, 0.1, baseline_dispatch());
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_solve(inst));
  }
}
BENCHMARK(BM_EnumerateScarf)->Arg(60)->Arg(70);

void BM_BranchAndBoundScarf(benchmark::State& state) {
  const MarketInstance inst = scarf_ramped(
      static_cast<double>(state.range(0)), 0.1, 0.1, baseline_dispatch());
  for (auto _ : state) {
    benchmark::DoNotOptimize(branch_and_bound(inst));
  }
}
BENCHMARK(BM_BranchAndBoundScarf)->Arg(60)->Arg(70);

void BM_OracleFuzz(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const MarketInstance inst = random_instance(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_solve(inst));
  }
}
BENCHMARK(BM_OracleFuzz);

}  // namespace

BENCHMARK_MAIN();
