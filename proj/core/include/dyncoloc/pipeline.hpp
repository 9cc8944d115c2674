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

#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/oracles.hpp"
#include "dyncoloc/series.hpp"
#include "dyncoloc/verify.hpp"

// End-to-end miners over an IndexedSeries, with wall-clock stage timings.

namespace dyncoloc {

struct StageTiming {
  std::string stage;
  double millis = 0.0;
};

struct MineOptions {
  MiningConfig config;
  PruningFlags pruning;
  bool derive_all = false;    ///< expand the maximal set into every prevalent pattern
  unsigned threads = 1;
  bool record_trace = false;  ///< keep the verification trace
};

struct MineResult {
  /// The maximal patterns, or every prevalent pattern when derive_all is set
  /// (or for the join miner). SizeThenLex order.
  std::vector<PatternResult> patterns;
  std::size_t maximal_count = 0;
  std::size_t prevalent_count = 0;
  std::size_t neighbor_pairs = 0;
  std::size_t prevalent_size2 = 0;
  std::size_t cliques = 0;
  VerifyStats verify;
  JoinStats join;
  std::vector<StageTiming> timings;
  std::vector<VerificationRecord> trace;

  double total_millis() const noexcept;
};

/// Neighbor pairs, size-2 tables, feature graph, clique enumeration, then
/// maximal verification (and optional expansion).
MineResult mine_maximal(const IndexedSeries& series, const SpanTable& spans,
                        const MineOptions& options);

/// The level-wise join baseline. `patterns` holds every prevalent pattern.
MineResult mine_join(const IndexedSeries& series, const SpanTable& spans,
                     const MineOptions& options);

/// Number of distinct size >= 2 subsets of the given patterns. For a
/// maximal set this is the number of prevalent patterns.
std::size_t count_covered_patterns(std::span<const Pattern> maximal);

/// Throws InvalidConfig naming the first base feature that is in
/// `life_cycles` but not in `known_bases`, or the reverse.
void check_life_cycles(const LifeCycles& life_cycles, const std::set<std::string>& known_bases);

}  // namespace dyncoloc
