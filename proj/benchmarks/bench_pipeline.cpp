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

#include "evrecon/datacube.hpp"
#include "evrecon/regularization.hpp"
#include "evrecon/solver.hpp"

namespace
{
using namespace evrecon;

EventStream make_stream(SensorGeometry g, std::size_t n)
{
  std::mt19937_64 rng(11);
  EventStream s{g, {}};
  s.events.reserve(n);
  const uint64_t pixels = g.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const uint64_t p = rng() % pixels;
    s.events.push_back(
      {static_cast<double>(i) * 1e-6, static_cast<uint32_t>(p % g.width),
       static_cast<uint32_t>(p / g.width), static_cast<int8_t>((rng() & 1) ? 1 : -1)});
  }
  return s;
}

void BM_BuildCube(benchmark::State & state)
{
  const auto s = make_stream({240, 180}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_cube(s, {150, std::nullopt}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildCube)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_SolveEach(benchmark::State & state)
{
  const auto s = make_stream({240, 180}, static_cast<std::size_t>(state.range(0)));
  const auto cube = build_cube(s, {150, std::nullopt});
  const auto lambda = compute_lambda(cube, {});
  for (auto _ : state) {
    double sink = 0.0;
    solve_each(cube, lambda, 1, [&](unsigned, std::size_t, std::span<const double> v) {
      sink += v.back();
    });
    benchmark::DoNotOptimize(sink);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cube.pixel_count()));
}
BENCHMARK(BM_SolveEach)->Arg(150'000)->Arg(1'500'000)->Unit(benchmark::kMillisecond);

void BM_ComputeLambda(benchmark::State & state)
{
  const auto s = make_stream({240, 180}, 1'500'000);
  const auto cube = build_cube(s, {150, std::nullopt});
  const LambdaConfig cfg{static_cast<LambdaMode>(state.range(0)), 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_lambda(cube, cfg));
  }
}
BENCHMARK(BM_ComputeLambda)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
