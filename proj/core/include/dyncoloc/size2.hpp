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

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/neighborhood.hpp"
#include "dyncoloc/series.hpp"

namespace dyncoloc {

/// All row instances of a pattern. Rows are stored flat with stride
/// `pattern.size()`; column i holds instances of `pattern[i]`. Rows are
/// sorted lexicographically and unique.
struct TableInstance {
  Pattern pattern;
  std::vector<InstanceId> cells;

  std::size_t width() const noexcept { return pattern.size(); }
  std::size_t row_count() const noexcept { return width() == 0 ? 0 : cells.size() / width(); }
  bool empty() const noexcept { return cells.empty(); }
  std::span<const InstanceId> row(std::size_t r) const {
    return std::span<const InstanceId>(cells).subspan(r * width(), width());
  }
  /// Distinct instances in column `column`, ascending.
  std::vector<InstanceId> distinct_in_column(std::size_t column) const;
  /// Sorts rows and drops duplicates.
  void normalize();
};

/// Size-2 table instances keyed by pattern.
using Size2Tables = std::map<Pattern, TableInstance>;

/// Groups neighbor pairs by their feature pair; each pair is one row.
Size2Tables size2_table_instances(std::span<const NeighborPair> pairs, const IndexedSeries& series);

/// Fraction of `feature`'s instances that occur in the table (each instance
/// counted once however many rows it joins). Zero when the feature has no
/// instances at all. Throws ContractViolation if `feature` is not in the
/// pattern.
double dpr(const TableInstance& table, FeatureId feature, const FeatureCounts& counts);

/// Participation ratio of every pattern feature, in pattern order.
std::vector<double> participation_ratios(const TableInstance& table, const FeatureCounts& counts);

/// Minimum participation ratio over the pattern's features.
double dpi(const TableInstance& table, const FeatureCounts& counts);

/// The size-2 tables whose DPI passes the prevalence threshold.
Size2Tables prevalent_size2(const Size2Tables& tables, const FeatureCounts& counts,
                            const MiningConfig& config);

/// Undirected graph of dynamic features whose edges are the prevalent
/// size-2 patterns; each edge carries its table instance.
class FeatureGraph {
 public:
  FeatureGraph() = default;
  /// Throws ContractViolation if any pattern is not size 2.
  explicit FeatureGraph(Size2Tables edges);
  /// Edges without table payloads; used for synthetic graphs.
  static FeatureGraph from_edges(std::span<const std::pair<FeatureId, FeatureId>> edges,
                                 std::span<const FeatureId> extra_vertices = {});

  std::span<const FeatureId> vertices() const noexcept { return vertices_; }
  const Size2Tables& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool adjacent(FeatureId a, FeatureId b) const noexcept;
  /// Sorted neighbor list; empty for unknown vertices.
  std::span<const FeatureId> neighbors(FeatureId v) const noexcept;
  std::size_t degree(FeatureId v) const noexcept { return neighbors(v).size(); }

 private:
  void index();
  std::vector<FeatureId> vertices_;
  Size2Tables edges_;
  std::map<FeatureId, std::vector<FeatureId>> adjacency_;
};

FeatureGraph build_feature_graph(Size2Tables prevalent);

}  // namespace dyncoloc
