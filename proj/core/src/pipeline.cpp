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

#include "dyncoloc/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <unordered_set>

#include "dyncoloc/clique.hpp"
#include "dyncoloc/neighborhood.hpp"
#include "dyncoloc/size2.hpp"

namespace dyncoloc {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}
  void lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

double MineResult::total_millis() const noexcept {
  double total = 0.0;
  for (const StageTiming& t : timings) total += t.millis;
  return total;
}

MineResult mine_maximal(const IndexedSeries& series, const SpanTable& spans,
                        const MineOptions& options) {
  options.config.validate();
  MineResult result;
  StageClock clock(result.timings);

  const auto pairs = neighbor_pairs(series, spans, options.config, options.threads);
  result.neighbor_pairs = pairs.size();
  clock.lap("neighbors");

  Size2Tables prevalent =
      prevalent_size2(size2_table_instances(pairs, series), series.counts(), options.config);
  result.prevalent_size2 = prevalent.size();
  clock.lap("size2");

  const FeatureGraph graph = build_feature_graph(std::move(prevalent));
  const auto cliques = maximal_cliques(graph);
  result.cliques = cliques.size();
  clock.lap("cliques");

  VerifyOutcome outcome = verify_all(cliques, graph.edges(), series.counts(), options.config,
                                     options.pruning,
                                     {options.threads, options.record_trace});
  result.verify = outcome.stats;
  result.trace = std::move(outcome.trace);
  result.maximal_count = outcome.maximal.size();
  clock.lap("verify");

  if (options.derive_all) {
    std::vector<Pattern> maximal;
    for (const PatternResult& r : outcome.maximal) maximal.push_back(r.pattern);
    result.patterns = derive_all_prevalent(maximal, graph.edges(), series.counts(),
                                           options.config, options.threads);
    result.prevalent_count = result.patterns.size();
    clock.lap("derive");
  } else {
    std::vector<Pattern> maximal;
    for (const PatternResult& r : outcome.maximal) maximal.push_back(r.pattern);
    result.prevalent_count = count_covered_patterns(maximal);
    result.patterns = std::move(outcome.maximal);
  }
  return result;
}

MineResult mine_join(const IndexedSeries& series, const SpanTable& spans,
                     const MineOptions& options) {
  MineResult result;
  StageClock clock(result.timings);
  result.patterns = join_based_mine(series, spans, options.config, &result.join, options.threads);
  clock.lap("join");
  result.prevalent_count = result.patterns.size();
  for (const PatternResult& r : result.patterns) {
    if (r.maximal) ++result.maximal_count;
    if (r.pattern.size() == 2) ++result.prevalent_size2;
  }
  return result;
}

std::size_t count_covered_patterns(std::span<const Pattern> maximal) {
  std::set<Pattern> covered;
  for (const Pattern& top : maximal) {
    const std::size_t m = top.size();
    if (m >= 63) throw ContractViolation("pattern too large to enumerate subsets");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<FeatureId> subset;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::uint64_t{1} << i)) subset.push_back(top[i]);
      }
      covered.emplace(std::move(subset));
    }
  }
  return covered.size();
}

void check_life_cycles(const LifeCycles& life_cycles, const std::set<std::string>& known_bases) {
  for (const auto& [base, value] : life_cycles) {
    if (!known_bases.contains(base)) {
      throw InvalidConfig("life cycle given for unknown feature '" + base + "'");
    }
  }
  for (const std::string& base : known_bases) {
    if (!life_cycles.contains(base)) {
      throw InvalidConfig("no life cycle for feature '" + base + "'");
    }
  }
}

}  // namespace dyncoloc
