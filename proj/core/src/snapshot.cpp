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

#include "dyncoloc/snapshot.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>

namespace dyncoloc {

std::size_t DynamicDatasetSeries::instance_count() const noexcept {
  std::size_t n = 0;
  for (const auto& window : windows) n += window.size();
  return n;
}

namespace {

using ObjectKey = std::pair<std::string_view, std::uint64_t>;
using ObjectMap = std::map<ObjectKey, Point>;

ObjectMap index_snapshot(const Snapshot& snapshot) {
  ObjectMap objects;
  for (const SnapshotRecord& record : snapshot.records) {
    const auto [it, inserted] =
        objects.emplace(ObjectKey{record.feature, record.instance_id}, record.position);
    if (!inserted) {
      throw FormatError("duplicate instance " + record.feature + "." +
                        std::to_string(record.instance_id) + " in snapshot t_point " +
                        std::to_string(snapshot.t_point));
    }
  }
  return objects;
}

struct Event {
  DynamicFeature feature;
  std::uint64_t instance_id;
  Point position;
};

}  // namespace

DynamicDatasetSeries diff_snapshots(std::span<const Snapshot> snapshots) {
  if (snapshots.size() < 2) {
    throw InsufficientData("need at least two snapshots to derive dynamic instances");
  }
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    if (snapshots[k].t_point != snapshots[k - 1].t_point + 1) {
      throw FormatError("snapshots must have contiguous t_point values; got " +
                        std::to_string(snapshots[k - 1].t_point) + " then " +
                        std::to_string(snapshots[k].t_point));
    }
  }

  DynamicDatasetSeries series;
  series.windows.resize(snapshots.size() - 1);
  std::map<DynamicFeature, std::uint32_t> next_ordinal;

  ObjectMap before = index_snapshot(snapshots[0]);
  for (std::size_t k = 0; k + 1 < snapshots.size(); ++k) {
    ObjectMap after = index_snapshot(snapshots[k + 1]);

    std::vector<Event> events;
    for (const auto& [key, position] : before) {
      if (!after.contains(key)) {
        events.push_back({{std::string(key.first), Kind::Dead}, key.second, position});
      }
    }
    for (const auto& [key, position] : after) {
      if (!before.contains(key)) {
        events.push_back({{std::string(key.first), Kind::New}, key.second, position});
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return std::tie(a.feature, a.instance_id) < std::tie(b.feature, b.instance_id);
    });

    auto& window = series.windows[k];
    window.reserve(events.size());
    for (Event& event : events) {
      const std::uint32_t ordinal = ++next_ordinal[event.feature];
      window.push_back({std::move(event.feature), ordinal, event.position,
                        static_cast<std::uint32_t>(k)});
    }
    before = std::move(after);
  }
  return series;
}

}  // namespace dyncoloc
