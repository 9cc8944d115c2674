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

#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/series.hpp"

namespace dyncoloc {

/// Two instances of different features satisfying the dynamic neighborhood
/// relation. Stored once, with `first < second`.
struct NeighborPair {
  InstanceId first = 0;
  InstanceId second = 0;
  auto operator<=>(const NeighborPair&) const = default;
};

/// Euclidean distance in the plane.
double distance(const Point& a, const Point& b) noexcept;

/// The dynamic neighborhood predicate: distance <= D_d and
/// |t_a - t_b| <= max(span_a, span_b) (strict `<` in Strict temporal mode).
/// Same-feature pairs are never neighbors.
bool dynamic_neighbors(const IndexedInstance& a, const IndexedInstance& b, const SpanTable& spans,
                       const MiningConfig& config) noexcept;

/// Uniform grid over instance positions with cell size D_d, so every
/// neighbor of an instance lies in the 3x3 block around its cell. Each cell
/// keeps its members bucketed by transition window.
class GridIndex {
 public:
  struct CellKey {
    std::int64_t x = 0;
    std::int64_t y = 0;
    auto operator<=>(const CellKey&) const = default;
  };

  GridIndex(const IndexedSeries& series, double cell_size);

  CellKey cell_of(const Point& p) const noexcept;
  /// Cells in ascending key order.
  std::span<const CellKey> cells() const noexcept { return keys_; }
  /// Members of `key` in window `t_index`; empty when absent.
  std::span<const InstanceId> bucket(const CellKey& key, std::uint32_t t_index) const;
  std::size_t window_count() const noexcept { return window_count_; }

 private:
  struct KeyHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };
  double cell_size_;
  std::size_t window_count_;
  std::vector<CellKey> keys_;
  std::unordered_map<CellKey, std::vector<std::vector<InstanceId>>, KeyHash> cells_;
};

/// All neighbor pairs of the series, sorted ascending. `threads` partitions
/// the grid cells among workers; the result does not depend on it.
/// Throws InvalidConfig when `spans` does not cover every catalog feature.
std::vector<NeighborPair> neighbor_pairs(const IndexedSeries& series, const SpanTable& spans,
                                         const MiningConfig& config, unsigned threads = 1);

}  // namespace dyncoloc
