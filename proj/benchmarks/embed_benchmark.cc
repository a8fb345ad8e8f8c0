// Copyright 2026 The rffkd Authors.
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

#include "rffkd/experiments.h"
#include "rffkd/feature_map.h"
#include "rffkd/kpca.h"

namespace {

using namespace rffkd;

FeatureMapSpec spec_for(std::size_t t, std::size_t d) {
  FeatureMapSpec s;
  s.count = t;
  s.input_dim = d;
  s.seed = 7;
  return s;
}

void BM_SampleMap(benchmark::State& state) {
  const auto spec = spec_for(state.range(0), 64);
  for (auto _ : state) benchmark::DoNotOptimize(FeatureMap::sample(spec));
}
BENCHMARK(BM_SampleMap)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Embed(benchmark::State& state) {
  const std::size_t t = state.range(0);
  const Mixture mix = synth_dataset(2000, 64, 10, 1);
  const FeatureMap map = FeatureMap::sample(spec_for(t, 64));
  for (auto _ : state) benchmark::DoNotOptimize(map.embed(mix.points));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_Embed)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_GramExact(benchmark::State& state) {
  const Mixture mix = synth_dataset(state.range(0), 20, 10, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gram_exact(mix.points, Bandwidth(2.0)));
}
BENCHMARK(BM_GramExact)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ProjectionResidual(benchmark::State& state) {
  const Mixture mix = synth_dataset(500, 20, 10, 3);
  const FeatureMap map = FeatureMap::sample(spec_for(state.range(0), 20));
  const Eigen::MatrixXd q = center_columns(map.embed(mix.points).features());
  for (auto _ : state) benchmark::DoNotOptimize(projection_residual(q, 40));
}
BENCHMARK(BM_ProjectionResidual)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_PairsExperiment(benchmark::State& state) {
  PairExperimentConfig cfg;
  cfg.t_list = {static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(pairs_experiment(cfg));
}
BENCHMARK(BM_PairsExperiment)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
