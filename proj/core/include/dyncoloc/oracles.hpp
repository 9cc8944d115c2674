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
#include <vector>

#include "dyncoloc/clique.hpp"
#include "dyncoloc/model.hpp"
#include "dyncoloc/neighborhood.hpp"
#include "dyncoloc/series.hpp"
#include "dyncoloc/size2.hpp"
#include "dyncoloc/verify.hpp"

// Reference implementations. They favor obviously-correct code over speed
// and serve as cross-checks for the maximal miner and as the join-based
// baseline in benchmarks.

namespace dyncoloc {

/// Hard caps that keep the exhaustive oracle from running away.
struct OracleConfig {
  std::size_t max_base_features = 8;
  std::size_t max_instances = 200;
  std::size_t max_windows = 6;
};

/// The input is larger than the OracleConfig caps allow.
class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

/// O(n^2) scan over every instance pair; sorted like neighbor_pairs().
std::vector<NeighborPair> all_pairs_neighbors(const IndexedSeries& series, const SpanTable& spans,
                                              const MiningConfig& config);

struct JoinStats {
  std::size_t candidates = 0;  ///< size >= 3 candidates that survived the subset check
  std::size_t levels = 0;      ///< deepest non-empty level
};

/// Level-wise miner of every prevalent pattern.
///
/// Size-2 tables come from the neighborhood and size-2 modules. A size-k
/// candidate joins two prevalent size-(k-1) patterns that share their first
/// k-2 features and is kept only if all its size-(k-1) subsets are
/// prevalent. Its rows join parent rows that agree on the shared prefix and
/// whose two last instances are neighbors. Stops at the first empty level.
/// Results are sorted by SizeThenLex with `maximal` set on patterns that
/// have no prevalent superset.
std::vector<PatternResult> join_based_mine(const IndexedSeries& series, const SpanTable& spans,
                                           const MiningConfig& config, JoinStats* stats = nullptr,
                                           unsigned threads = 1);

struct BruteForceResult {
  std::vector<PatternResult> prevalent;  ///< every prevalent pattern, SizeThenLex order
  std::vector<PatternResult> maximal;    ///< prevalent with no prevalent strict superset
};

/// Enumerates every feature subset of size >= 2 and builds its table
/// instance by exhaustive search over instance combinations, checking the
/// neighborhood relation on every pair. Throws OracleCapExceeded when the
/// input exceeds `caps`.
BruteForceResult brute_force_mine(const IndexedSeries& series, const SpanTable& spans,
                                  const MiningConfig& config, const OracleConfig& caps = {});

/// brute_force_mine(...).maximal
std::vector<PatternResult> brute_force_maximal(const IndexedSeries& series, const SpanTable& spans,
                                               const MiningConfig& config,
                                               const OracleConfig& caps = {});

/// Maximal cliques of size >= 2 by Bron-Kerbosch with Tomita pivoting.
/// Sorted ascending.
std::vector<FeatureClique> bron_kerbosch(const FeatureGraph& graph);

}  // namespace dyncoloc
