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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/snapshot.hpp"

namespace dyncoloc {

/// A dynamic instance with its feature resolved to a catalog id.
struct IndexedInstance {
  FeatureId feature = 0;
  std::uint32_t ordinal = 0;
  Point position;
  std::uint32_t t_index = 0;
};

/// Total dynamic-instance count per feature across all windows; the
/// denominator of every participation ratio.
class FeatureCounts {
 public:
  FeatureCounts() = default;
  explicit FeatureCounts(std::vector<std::size_t> counts) : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  /// Zero for ids outside the table.
  std::size_t operator[](FeatureId id) const noexcept {
    return id < counts_.size() ? counts_[id] : 0;
  }

 private:
  std::vector<std::size_t> counts_;
};

/// Flat, catalog-indexed view of a DynamicDatasetSeries: the input of every
/// miner. Instances are sorted by (feature, ordinal), so InstanceId order is
/// the canonical instance order and each feature's instances are contiguous.
class IndexedSeries {
 public:
  IndexedSeries() = default;
  static IndexedSeries from(const DynamicDatasetSeries& series);

  const FeatureCatalog& catalog() const noexcept { return catalog_; }
  std::span<const IndexedInstance> instances() const noexcept { return instances_; }
  const IndexedInstance& operator[](InstanceId id) const { return instances_[id]; }
  std::size_t size() const noexcept { return instances_.size(); }
  std::size_t window_count() const noexcept { return window_count_; }

  /// Instances of one feature (contiguous id range starting at first_of()).
  std::span<const IndexedInstance> instances_of(FeatureId feature) const;
  InstanceId first_of(FeatureId feature) const { return offsets_.at(feature); }
  const FeatureCounts& counts() const noexcept { return counts_; }

  /// "A_new.3"
  std::string label(InstanceId id) const;
  /// Looks up an instance by feature name and ordinal; throws std::out_of_range.
  InstanceId find(const DynamicFeature& feature, std::uint32_t ordinal) const;

  /// Back to the per-window representation.
  DynamicDatasetSeries to_series() const;

 private:
  FeatureCatalog catalog_;
  std::vector<IndexedInstance> instances_;
  std::vector<InstanceId> offsets_;  // size = catalog size + 1
  FeatureCounts counts_;
  std::size_t window_count_ = 0;
};

}  // namespace dyncoloc
