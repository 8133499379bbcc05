// Copyright 2026 The dsp-pack Authors
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

#include "benchmark/benchmark.h"
#include "dsp/baseline.h"
#include "dsp/bounds.h"
#include "dsp/containers.h"
#include "dsp/fixtures.h"
#include "dsp/profile.h"
#include "dsp/ptas_short.h"
#include "dsp/square.h"

namespace dsp {
namespace {

Instance RandomOfSize(Int n, std::uint64_t seed) {
  GeneratorParams p;
  p.n_min = n;
  p.n_max = n;
  p.W_min = 4 * n;
  p.W_max = 4 * n;
  p.w_max = 2 * n;
  p.h_min = 1;
  p.h_max = 50;
  p.seed = seed;
  return random_instance(p);
}

void BM_ProfileAdd(benchmark::State& state) {
  const Int W = state.range(0);
  for (auto _ : state) {
    DemandProfile d(W);
    for (Int i = 0; i < W; ++i) d.add((i * 7919) % W, 1 + i % 5, 1);
    benchmark::DoNotOptimize(d.max_over(0, W));
  }
}
BENCHMARK(BM_ProfileAdd)->Range(64, 4096);

void BM_LowerBound(benchmark::State& state) {
  const Instance inst = RandomOfSize(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound(inst).value);
}
BENCHMARK(BM_LowerBound)->Range(16, 1024);

void BM_TwoApprox(benchmark::State& state) {
  const Instance inst = RandomOfSize(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(two_approx(inst).report.peak);
}
BENCHMARK(BM_TwoApprox)->Range(16, 1024);

void BM_FiveThirds(benchmark::State& state) {
  const Instance inst = RandomOfSize(state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(five_thirds(inst).report.peak);
  }
}
BENCHMARK(BM_FiveThirds)->Range(8, 64);

void BM_PtasShortFlat(benchmark::State& state) {
  const Instance inst =
      random_flat_instance(64, state.range(0), 3, /*seed=*/4);
  for (auto _ : state) benchmark::DoNotOptimize(ptas_short(inst).report.peak);
}
BENCHMARK(BM_PtasShortFlat)->Arg(30)->Arg(60);

void BM_SquareDsp(benchmark::State& state) {
  GeneratorParams p;
  p.n_min = p.n_max = state.range(0);
  p.W_min = p.W_max = 40;
  p.w_max = 6;
  p.h_min = 1;
  p.h_max = 6;
  p.beta = 1;
  p.seed = 5;
  const Instance inst = random_instance(p);
  for (auto _ : state) benchmark::DoNotOptimize(square_dsp(inst).report.peak);
}
BENCHMARK(BM_SquareDsp)->Arg(8)->Arg(16);

}  // namespace
}  // namespace dsp

BENCHMARK_MAIN();
