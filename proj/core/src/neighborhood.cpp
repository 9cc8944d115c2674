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

#include "dyncoloc/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dyncoloc/parallel.hpp"

namespace dyncoloc {

double distance(const Point& a, const Point& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool dynamic_neighbors(const IndexedInstance& a, const IndexedInstance& b, const SpanTable& spans,
                       const MiningConfig& config) noexcept {
  if (a.feature == b.feature) return false;
  const std::uint32_t dt = a.t_index > b.t_index ? a.t_index - b.t_index : b.t_index - a.t_index;
  const std::uint32_t reach = std::max(spans[a.feature], spans[b.feature]);
  const bool in_time = config.temporal == Comparison::Inclusive ? dt <= reach : dt < reach;
  return in_time && distance(a.position, b.position) <= config.distance_threshold;
}

std::size_t GridIndex::KeyHash::operator()(const CellKey& k) const noexcept {
  const auto ux = static_cast<std::uint64_t>(k.x);
  const auto uy = static_cast<std::uint64_t>(k.y);
  return static_cast<std::size_t>(ux * 0x9E3779B97F4A7C15ull ^ (uy + 0x632BE59BD9B4E019ull + (ux << 6)));
}

GridIndex::GridIndex(const IndexedSeries& series, double cell_size)
    : cell_size_(cell_size), window_count_(series.window_count()) {
  if (!(cell_size > 0.0)) throw InvalidConfig("grid cell size must be positive");
  const auto instances = series.instances();
  for (InstanceId id = 0; id < instances.size(); ++id) {
    const IndexedInstance& instance = instances[id];
    auto& cell = cells_[cell_of(instance.position)];
    if (cell.empty()) cell.resize(window_count_);
    cell.at(instance.t_index).push_back(id);
  }
  keys_.reserve(cells_.size());
  for (const auto& entry : cells_) keys_.push_back(entry.first);
  std::sort(keys_.begin(), keys_.end());
}

GridIndex::CellKey GridIndex::cell_of(const Point& p) const noexcept {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_size_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_size_))};
}

std::span<const InstanceId> GridIndex::bucket(const CellKey& key, std::uint32_t t_index) const {
  const auto it = cells_.find(key);
  if (it == cells_.end() || t_index >= it->second.size()) return {};
  return it->second[t_index];
}

std::vector<NeighborPair> neighbor_pairs(const IndexedSeries& series, const SpanTable& spans,
                                         const MiningConfig& config, unsigned threads) {
  config.validate();
  if (spans.size() < series.catalog().size()) {
    throw InvalidConfig("span table has " + std::to_string(spans.size()) + " entries for " +
                        std::to_string(series.catalog().size()) + " dynamic features");
  }

  const GridIndex grid(series, config.distance_threshold);
  const auto keys = grid.cells();
  const auto windows = static_cast<std::int64_t>(grid.window_count());
  const auto reach = static_cast<std::int64_t>(spans.max_span());

  std::vector<std::vector<NeighborPair>> per_cell(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t c) {
    const GridIndex::CellKey home = keys[c];
    auto& out = per_cell[c];
    for (std::int64_t ta = 0; ta < windows; ++ta) {
      const auto anchors = grid.bucket(home, static_cast<std::uint32_t>(ta));
      if (anchors.empty()) continue;
      const std::int64_t lo = std::max<std::int64_t>(0, ta - reach);
      const std::int64_t hi = std::min<std::int64_t>(windows - 1, ta + reach);
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        for (std::int64_t dy = -1; dy <= 1; ++dy) {
          const GridIndex::CellKey other{home.x + dx, home.y + dy};
          for (std::int64_t tb = lo; tb <= hi; ++tb) {
            const auto candidates = grid.bucket(other, static_cast<std::uint32_t>(tb));
            for (const InstanceId a : anchors) {
              for (const InstanceId b : candidates) {
                if (a < b && dynamic_neighbors(series[a], series[b], spans, config)) {
                  out.push_back({a, b});
                }
              }
            }
          }
        }
      }
    }
  });

  std::size_t total = 0;
  for (const auto& part : per_cell) total += part.size();
  std::vector<NeighborPair> pairs;
  pairs.reserve(total);
  for (const auto& part : per_cell) pairs.insert(pairs.end(), part.begin(), part.end());
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace dyncoloc
