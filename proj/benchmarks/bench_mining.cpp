// Copyright 2026 The dyncoloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <map>

#include "dyncoloc/clique.hpp"
#include "dyncoloc/datagen.hpp"
#include "dyncoloc/neighborhood.hpp"
#include "dyncoloc/oracles.hpp"
#include "dyncoloc/pipeline.hpp"
#include "dyncoloc/verify.hpp"

namespace {

using namespace dyncoloc;

struct Workload {
  IndexedSeries series;
  SpanTable spans;
  MiningConfig config;
  Size2Tables prevalent;
  FeatureGraph graph;
  std::vector<FeatureClique> cliques;
};

Workload make_workload(std::uint64_t instances) {
  GenConfig gc;
  gc.n_dynamic_instances = instances;
  const auto gen = generate(gc);
  Workload w;
  w.series = IndexedSeries::from(diff_snapshots(gen.snapshots));
  w.spans = SpanTable::build(w.series.catalog(), gen.life_cycles, gc.time_span);
  const auto pairs = neighbor_pairs(w.series, w.spans, w.config);
  w.prevalent = prevalent_size2(size2_table_instances(pairs, w.series), w.series.counts(), w.config);
  w.graph = build_feature_graph(w.prevalent);
  w.cliques = maximal_cliques(w.graph);
  return w;
}

const Workload& workload(std::int64_t instances) {
  static std::map<std::int64_t, Workload> cache;
  auto it = cache.find(instances);
  if (it == cache.end()) it = cache.emplace(instances, make_workload(instances)).first;
  return it->second;
}

void BM_NeighborPairs(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(neighbor_pairs(w.series, w.spans, w.config));
}
BENCHMARK(BM_NeighborPairs)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MaximalCliques(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_cliques(w.graph));
}
BENCHMARK(BM_MaximalCliques)->Arg(2000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_BronKerbosch(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bron_kerbosch(w.graph));
}
BENCHMARK(BM_BronKerbosch)->Arg(2000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_VerifyAll(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  const PruningFlags flags{state.range(1) != 0, state.range(1) != 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        verify_all(w.cliques, w.prevalent, w.series.counts(), w.config, flags));
  }
}
BENCHMARK(BM_VerifyAll)
    ->Args({2000, 0})
    ->Args({2000, 1})
    ->Args({10000, 1})
    ->Unit(benchmark::kMillisecond);

void BM_MineMaximal(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  MineOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(mine_maximal(w.series, w.spans, opts));
}
BENCHMARK(BM_MineMaximal)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_JoinMiner(benchmark::State& state) {
  const auto& w = workload(state.range(0));
  MineOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(mine_join(w.series, w.spans, opts));
}
BENCHMARK(BM_JoinMiner)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
