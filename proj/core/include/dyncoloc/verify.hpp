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
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dyncoloc/clique.hpp"
#include "dyncoloc/model.hpp"
#include "dyncoloc/series.hpp"
#include "dyncoloc/size2.hpp"

namespace dyncoloc {

/// A mined pattern with its prevalence figures.
struct PatternResult {
  Pattern pattern;
  double dpi = 0.0;
  std::size_t row_count = 0;
  bool maximal = false;

  bool operator==(const PatternResult&) const = default;
};

/// Row instances of a candidate clique assembled from its size-2 tables.
///
/// The anchor (canonical-first feature unless given) is joined with every
/// other feature through the {anchor, f} tables; anchor instances present in
/// all of them are the common instances. Each common instance's partner
/// lists are crossed into candidate rows, and a row survives only when every
/// remaining feature pair also appears in its size-2 table. The result does
/// not depend on the anchor. Throws ContractViolation when a pair table is
/// missing from `size2`.
TableInstance candidate_table_instance(const FeatureClique& clique, const Size2Tables& size2);
TableInstance candidate_table_instance(const FeatureClique& clique, const Size2Tables& size2,
                                       FeatureId anchor);

enum class AbortDecision { Continue, Abort };

/// Early-abort test run while a candidate's rows are assembled.
///
/// For every pattern position, `tallies[i]` distinct instances have been
/// seen in verified rows so far and at most `remaining[i]` further distinct
/// instances can still join; `totals[i]` is the feature's instance count.
/// Aborts when some (tally + remaining) / total already fails the prevalence
/// threshold, which proves the candidate non-prevalent.
AbortDecision early_abort_check(std::span<const std::size_t> tallies,
                                std::span<const std::size_t> totals,
                                std::span<const std::size_t> remaining, const MiningConfig& config);

struct PruningFlags {
  bool early_abort = true;         ///< stop assembling rows once a DPR bound fails
  bool shared_subpatterns = true;  ///< verify sub-cliques shared by pending candidates first

  static PruningFlags none() { return {false, false}; }
};

/// Counters describing one verify_all run.
struct VerifyStats {
  std::size_t candidates_seen = 0;       ///< distinct candidates ever queued
  std::size_t tables_built = 0;          ///< full row assemblies
  std::size_t early_aborts = 0;          ///< assemblies cut short by the DPR bound
  std::size_t shared_verified = 0;       ///< shared sub-cliques verified up front
  std::size_t shared_pruned = 0;         ///< candidates failed through a shared sub-clique
  std::size_t decompositions = 0;        ///< failed candidates split into size-(k-1)
  std::size_t subsumed_skips = 0;        ///< candidates dropped as subsets of accepted ones
};

/// A pattern whose table instance was assembled completely.
struct VerificationRecord {
  Pattern pattern;
  std::vector<double> ratios;  ///< participation ratio per pattern feature
  bool prevalent = false;
};

/// A failed candidate and the sub-patterns its failure queued.
struct Decomposition {
  Pattern failed;
  std::vector<Pattern> queued;  ///< ascending
};

struct VerifyOptions {
  unsigned threads = 1;
  bool record_trace = false;  ///< fill VerifyOutcome::trace and decompositions
};

struct VerifyOutcome {
  std::vector<PatternResult> maximal;  ///< sorted by SizeThenLex
  VerifyStats stats;
  std::vector<VerificationRecord> trace;
  std::vector<Decomposition> decompositions;
};

/// Pending candidates ordered by descending size, then canonical order.
/// Nothing is queued twice, and nothing that is contained in an accepted
/// pattern is queued.
class CandidateQueue {
 public:
  /// Queues `candidate` unless seen before or subsumed by `accepted`.
  bool push(const Pattern& candidate, std::span<const Pattern> accepted);

  /// Queues every size-(k-1) sub-pattern of a failed candidate that is not
  /// already known or subsumed. Returns the newly queued ones.
  std::vector<Pattern> decompose(const Pattern& failed, std::span<const Pattern> accepted);

  bool empty() const noexcept { return pending_.empty(); }
  std::size_t size() const noexcept { return pending_.size(); }
  std::size_t seen_count() const noexcept { return seen_.size(); }
  /// Removes and returns every pending candidate of the largest size.
  std::vector<Pattern> take_largest_level();

 private:
  struct LargerFirst {
    bool operator()(const Pattern& a, const Pattern& b) const noexcept {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    }
  };
  std::set<Pattern, LargerFirst> pending_;
  std::set<Pattern> seen_;
};

/// Verifies candidate cliques against instance data and returns the
/// prevalent maximal patterns.
///
/// Candidates are processed level by level, largest first, each level in
/// canonical order; the rules are those of CandidateQueue. A prevalent
/// candidate is accepted unless an accepted pattern contains it; a failed
/// candidate of size >= 3 is decomposed into its size-(k-1) sub-patterns.
/// Size-2 candidates are graph edges and therefore prevalent.
///
/// With early abort, a candidate is first checked against an upper bound on
/// every participation ratio (instances with a partner of each other
/// feature, narrowed by arc consistency) and row assembly stops once the
/// bound fails. With shared sub-pattern pruning, triples held by two or
/// more candidates of a level are verified first. Every known
/// non-prevalent set (a failed shared triple, or a failing subset found by
/// the bound) fails its supersets without verification, and such a failed
/// candidate is decomposed only by removing members of that set: any
/// prevalent subset must miss one of them. The pruning flags change the
/// amount of work only, never the result. Works on catalogs of up to 4096
/// dynamic features.
VerifyOutcome verify_all(std::span<const FeatureClique> cliques, const Size2Tables& size2,
                         const FeatureCounts& counts, const MiningConfig& config,
                         PruningFlags pruning = {}, const VerifyOptions& options = {});

/// Every size >= 2 subset of the maximal patterns, each with its DPI
/// recomputed from a freshly assembled table instance. `maximal` is set on
/// the members of `maximal`. Sorted by SizeThenLex.
std::vector<PatternResult> derive_all_prevalent(std::span<const Pattern> maximal,
                                                const Size2Tables& size2,
                                                const FeatureCounts& counts,
                                                const MiningConfig& config, unsigned threads = 1);

}  // namespace dyncoloc
