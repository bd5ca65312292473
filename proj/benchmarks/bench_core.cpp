// Copyright 2026 The qtel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qtel/dynamics.hpp"
#include "qtel/model.hpp"
#include "qtel/spectral.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"

namespace {

qtel::ModelParams params_for(benchmark::State &state) {
  auto p = qtel::reference_example(2);
  p.N = static_cast<int>(state.range(0));
  return p;
}

void BM_BuildAndTransform(benchmark::State &state) {
  const auto p = params_for(state);
  const qtel::BasisMap b(p.N);
  const auto t = qtel::build_transform(b);
  for (auto _ : state) {
    auto th = qtel::transform_hamiltonian(qtel::build_hamiltonian(p, b), t);
    benchmark::DoNotOptimize(qtel::extract_blocks(th, t));
  }
}
BENCHMARK(BM_BuildAndTransform)->Arg(100)->Arg(398)->Unit(benchmark::kMillisecond);

void BM_DiagonalizeFull(benchmark::State &state) {
  const auto p = params_for(state);
  const auto h = qtel::build_hamiltonian(p, qtel::BasisMap(p.N));
  for (auto _ : state) benchmark::DoNotOptimize(qtel::diagonalize(h));
}
BENCHMARK(BM_DiagonalizeFull)->Arg(100)->Arg(398)->Unit(benchmark::kMillisecond);

void BM_DiagonalizeBlocks(benchmark::State &state) {
  const auto p = params_for(state);
  const qtel::BasisMap b(p.N);
  const auto t = qtel::build_transform(b);
  const auto blocks = qtel::extract_blocks(
      qtel::transform_hamiltonian(qtel::build_hamiltonian(p, b), t), t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qtel::lift_blocks(qtel::diagonalize(blocks.plus),
                                               qtel::diagonalize(blocks.minus), t));
  }
}
BENCHMARK(BM_DiagonalizeBlocks)->Arg(100)->Arg(398)->Unit(benchmark::kMillisecond);

void BM_SampleOccupations(benchmark::State &state) {
  const auto p = qtel::reference_example(2);
  const qtel::BasisMap b(p.N);
  const auto es = qtel::diagonalize(qtel::build_hamiltonian(p, b));
  const auto c0 = qtel::project_initial(es, b, qtel::remote(qtel::Side::Alpha));
  const auto times = qtel::time_grid(8000, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(qtel::sample_occupations(es, c0, b, times, p.hbar, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleOccupations)->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
