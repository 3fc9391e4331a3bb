// Copyright 2026 The evrecon Authors
//
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
#include <vector>

#include "evrecon/solver.hpp"

namespace
{
using namespace evrecon;

void BM_SolvePixelInto(benchmark::State & state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.5, 1.0);
  std::uniform_int_distribution<int> acc(-3, 3);
  std::vector<double> accum(n - 1);
  std::vector<double> lambda(n);
  for (auto & a : accum) {
    a = acc(rng);
  }
  for (auto & l : lambda) {
    l = lam(rng);
  }
  std::vector<double> out(n);
  std::vector<double> scratch(n);
  for (auto _ : state) {
    solve_pixel_into(accum, lambda, out, scratch);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_SolvePixelInto)->RangeMultiplier(8)->Range(8, 16384);

void BM_SolveTridiagonal(benchmark::State & state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto system = assemble_system(std::vector<double>(n, 0.7));
  const std::vector<double> rhs(n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tridiagonal(system, rhs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_SolveTridiagonal)->RangeMultiplier(8)->Range(8, 16384);

}  // namespace

BENCHMARK_MAIN();
