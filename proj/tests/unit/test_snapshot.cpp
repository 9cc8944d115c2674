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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "dyncoloc/datagen.hpp"
#include "dyncoloc/snapshot.hpp"

namespace dyncoloc {
namespace {

Snapshot snap(std::uint32_t t, std::vector<SnapshotRecord> records) {
  return {t, std::move(records)};
}

TEST(Diff, AppearAndDisappear) {
  const std::vector<Snapshot> s{
      snap(0, {{"A", 1, {0, 0}}, {"B", 1, {1, 1}}}),
      snap(1, {{"A", 1, {5, 5}}, {"A", 2, {2, 2}}}),
  };
  const auto series = diff_snapshots(s);
  ASSERT_EQ(series.window_count(), 1u);
  ASSERT_EQ(series.instance_count(), 2u);
  const auto& w = series.windows[0];
  const auto dead = std::find_if(w.begin(), w.end(),
                                 [](const DynamicInstance& d) { return d.feature.kind == Kind::Dead; });
  const auto born = std::find_if(w.begin(), w.end(),
                                 [](const DynamicInstance& d) { return d.feature.kind == Kind::New; });
  ASSERT_NE(dead, w.end());
  ASSERT_NE(born, w.end());
  EXPECT_EQ(dead->feature.base, "B");
  EXPECT_EQ(dead->position, (Point{1, 1}));
  EXPECT_EQ(born->feature.base, "A");
  EXPECT_EQ(born->position, (Point{2, 2}));
  EXPECT_EQ(born->ordinal, 1u);
  EXPECT_EQ(born->t_index, 0u);
}

TEST(Diff, IdenticalSnapshotsGiveEmptyWindows) {
  const std::vector<Snapshot> s{snap(0, {{"A", 1, {0, 0}}}), snap(1, {{"A", 1, {0, 0}}}),
                                snap(2, {{"A", 1, {3, 0}}})};
  const auto series = diff_snapshots(s);
  ASSERT_EQ(series.window_count(), 2u);
  EXPECT_EQ(series.instance_count(), 0u);
}

TEST(Diff, ReappearanceCountsTwice) {
  const std::vector<Snapshot> s{snap(0, {{"A", 7, {0, 0}}}), snap(1, {}),
                                snap(2, {{"A", 7, {1, 0}}})};
  const auto series = diff_snapshots(s);
  ASSERT_EQ(series.windows[0].size(), 1u);
  EXPECT_EQ(series.windows[0][0].feature.kind, Kind::Dead);
  ASSERT_EQ(series.windows[1].size(), 1u);
  EXPECT_EQ(series.windows[1][0].feature.kind, Kind::New);
}

TEST(Diff, OrdinalsCountPerFeatureAcrossWindows) {
  const std::vector<Snapshot> s{snap(0, {}), snap(1, {{"A", 2, {0, 0}}, {"A", 1, {1, 0}}}),
                                snap(2, {{"A", 2, {0, 0}}, {"A", 1, {1, 0}}, {"A", 9, {4, 4}}})};
  const auto series = diff_snapshots(s);
  ASSERT_EQ(series.windows[0].size(), 2u);
  ASSERT_EQ(series.windows[1].size(), 1u);
  std::set<std::uint32_t> first;
  for (const auto& d : series.windows[0]) first.insert(d.ordinal);
  EXPECT_EQ(first, (std::set<std::uint32_t>{1, 2}));
  EXPECT_EQ(series.windows[1][0].ordinal, 3u);
}

TEST(Diff, RecordOrderDoesNotMatter) {
  std::vector<Snapshot> a{snap(0, {{"A", 1, {0, 0}}, {"B", 2, {1, 0}}, {"C", 3, {2, 0}}}),
                          snap(1, {{"C", 3, {2, 0}}, {"A", 4, {9, 0}}, {"B", 5, {8, 0}}})};
  std::vector<Snapshot> b = a;
  std::reverse(b[0].records.begin(), b[0].records.end());
  std::reverse(b[1].records.begin(), b[1].records.end());
  EXPECT_EQ(diff_snapshots(a).windows, diff_snapshots(b).windows);
}

TEST(Diff, ConservesPopulation) {
  GenConfig config;
  config.static_instances = 60;
  config.cluster_count = 3;
  config.n_time_points = 5;
  config.n_dynamic_instances = 300;
  const auto gen = generate(config);
  const auto series = diff_snapshots(gen.snapshots);
  // |S_k+1| = |S_k| + new_k - dead_k for every window.
  for (std::size_t k = 0; k + 1 < gen.snapshots.size(); ++k) {
    long delta = 0;
    for (const auto& d : series.windows[k]) delta += d.feature.kind == Kind::New ? 1 : -1;
    EXPECT_EQ(static_cast<long>(gen.snapshots[k + 1].records.size()),
              static_cast<long>(gen.snapshots[k].records.size()) + delta);
  }
}

TEST(Diff, Errors) {
  EXPECT_THROW(diff_snapshots(std::vector<Snapshot>{snap(0, {})}), InsufficientData);
  EXPECT_THROW(diff_snapshots(std::vector<Snapshot>{snap(0, {}), snap(2, {})}), FormatError);
  EXPECT_THROW(diff_snapshots(std::vector<Snapshot>{snap(0, {{"A", 1, {0, 0}}, {"A", 1, {1, 1}}}),
                                                    snap(1, {})}),
               FormatError);
}

}  // namespace
}  // namespace dyncoloc
