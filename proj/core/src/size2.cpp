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

#include "dyncoloc/size2.hpp"

#include <algorithm>
#include <limits>

namespace dyncoloc {

std::vector<InstanceId> TableInstance::distinct_in_column(std::size_t column) const {
  std::vector<InstanceId> values;
  values.reserve(row_count());
  for (std::size_t r = 0; r < row_count(); ++r) values.push_back(cells[r * width() + column]);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void TableInstance::normalize() {
  const std::size_t w = width();
  const std::size_t n = row_count();
  std::vector<std::size_t> order(n);
  for (std::size_t r = 0; r < n; ++r) order[r] = r;
  auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(cells.begin() + a * w, cells.begin() + (a + 1) * w,
                                        cells.begin() + b * w, cells.begin() + (b + 1) * w);
  };
  auto row_equal = [&](std::size_t a, std::size_t b) {
    return std::equal(cells.begin() + a * w, cells.begin() + (a + 1) * w, cells.begin() + b * w);
  };
  std::sort(order.begin(), order.end(), row_less);
  order.erase(std::unique(order.begin(), order.end(), row_equal), order.end());
  std::vector<InstanceId> sorted;
  sorted.reserve(order.size() * w);
  for (const std::size_t r : order) {
    sorted.insert(sorted.end(), cells.begin() + r * w, cells.begin() + (r + 1) * w);
  }
  cells = std::move(sorted);
}

Size2Tables size2_table_instances(std::span<const NeighborPair> pairs, const IndexedSeries& series) {
  Size2Tables tables;
  for (const NeighborPair& pair : pairs) {
    InstanceId a = pair.first;
    InstanceId b = pair.second;
    if (a > b) std::swap(a, b);
    const FeatureId fa = series[a].feature;
    const FeatureId fb = series[b].feature;
    if (fa == fb) continue;
    Pattern pattern{fa, fb};
    auto it = tables.find(pattern);
    if (it == tables.end()) it = tables.emplace(pattern, TableInstance{pattern, {}}).first;
    // Instance ids are ordered by feature, so `a` belongs to the smaller feature.
    it->second.cells.push_back(a);
    it->second.cells.push_back(b);
  }
  for (auto& [pattern, table] : tables) table.normalize();
  return tables;
}

double dpr(const TableInstance& table, FeatureId feature, const FeatureCounts& counts) {
  const auto column = table.pattern.position_of(feature);
  if (!column) throw ContractViolation("feature is not part of the pattern");
  const std::size_t total = counts[feature];
  if (total == 0) return 0.0;
  return static_cast<double>(table.distinct_in_column(*column).size()) / static_cast<double>(total);
}

std::vector<double> participation_ratios(const TableInstance& table, const FeatureCounts& counts) {
  std::vector<double> ratios;
  ratios.reserve(table.width());
  for (std::size_t c = 0; c < table.width(); ++c) {
    const std::size_t total = counts[table.pattern[c]];
    ratios.push_back(total == 0 ? 0.0
                                : static_cast<double>(table.distinct_in_column(c).size()) /
                                      static_cast<double>(total));
  }
  return ratios;
}

double dpi(const TableInstance& table, const FeatureCounts& counts) {
  if (table.width() == 0) return 0.0;
  const auto ratios = participation_ratios(table, counts);
  return *std::min_element(ratios.begin(), ratios.end());
}

Size2Tables prevalent_size2(const Size2Tables& tables, const FeatureCounts& counts,
                            const MiningConfig& config) {
  Size2Tables kept;
  for (const auto& [pattern, table] : tables) {
    if (passes_prevalence(dpi(table, counts), config)) kept.emplace(pattern, table);
  }
  return kept;
}

FeatureGraph::FeatureGraph(Size2Tables edges) : edges_(std::move(edges)) {
  for (const auto& [pattern, table] : edges_) {
    if (pattern.size() != 2) throw ContractViolation("feature graph edges must be size-2 patterns");
  }
  index();
}

FeatureGraph FeatureGraph::from_edges(std::span<const std::pair<FeatureId, FeatureId>> edges,
                                      std::span<const FeatureId> extra_vertices) {
  Size2Tables tables;
  for (const auto& [a, b] : edges) {
    Pattern pattern{a, b};
    tables.emplace(pattern, TableInstance{pattern, {}});
  }
  FeatureGraph graph(std::move(tables));
  for (const FeatureId v : extra_vertices) graph.adjacency_.try_emplace(v);
  graph.vertices_.clear();
  for (const auto& entry : graph.adjacency_) graph.vertices_.push_back(entry.first);
  return graph;
}

void FeatureGraph::index() {
  adjacency_.clear();
  for (const auto& [pattern, table] : edges_) {
    adjacency_[pattern[0]].push_back(pattern[1]);
    adjacency_[pattern[1]].push_back(pattern[0]);
  }
  vertices_.clear();
  for (auto& [v, list] : adjacency_) {
    std::sort(list.begin(), list.end());
    vertices_.push_back(v);
  }
}

bool FeatureGraph::adjacent(FeatureId a, FeatureId b) const noexcept {
  const auto list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::span<const FeatureId> FeatureGraph::neighbors(FeatureId v) const noexcept {
  const auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return {};
  return it->second;
}

FeatureGraph build_feature_graph(Size2Tables prevalent) {
  return FeatureGraph(std::move(prevalent));
}

}  // namespace dyncoloc
