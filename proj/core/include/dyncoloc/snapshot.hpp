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

namespace dyncoloc {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// One object observed at a time point.
struct SnapshotRecord {
  std::string feature;        ///< base feature id
  std::uint64_t instance_id;  ///< identity across snapshots
  Point position;
};

/// Everything observed at time point `t_point`.
struct Snapshot {
  std::uint32_t t_point = 0;
  std::vector<SnapshotRecord> records;
};

/// One appearance or disappearance event.
struct DynamicInstance {
  DynamicFeature feature;
  std::uint32_t ordinal = 0;  ///< 1-based, per dynamic feature
  Point position;
  std::uint32_t t_index = 0;  ///< transition window, 0-based

  bool operator==(const DynamicInstance&) const = default;
};

/// Dynamic instances grouped by transition window. Window k holds the
/// events between snapshots k and k+1; empty windows are kept.
struct DynamicDatasetSeries {
  std::vector<std::vector<DynamicInstance>> windows;

  std::size_t window_count() const noexcept { return windows.size(); }
  std::size_t instance_count() const noexcept;
};

/// Compares consecutive snapshots by (feature, instance id).
///
/// An id present at t_k and missing at t_k+1 becomes a dead instance of
/// window k at its t_k position; the reverse becomes a new instance at its
/// t_k+1 position. Ids present in both are unchanged even if they moved.
/// Ordinals count up per dynamic feature in (window, instance id) order.
///
/// Throws InsufficientData for fewer than two snapshots and FormatError for
/// gaps in t_point or a repeated (feature, id) inside one snapshot.
DynamicDatasetSeries diff_snapshots(std::span<const Snapshot> snapshots);

}  // namespace dyncoloc
