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

#include <sstream>

#include "dyncoloc/datagen.hpp"
#include "dyncoloc/io.hpp"
#include "dyncoloc/pipeline.hpp"

namespace dyncoloc {
namespace {

GenConfig small(std::uint64_t seed) {
  GenConfig c;
  c.n_dynamic_instances = 1500;
  c.static_instances = 100;
  c.cluster_count = 4;
  c.seed = seed;
  return c;
}

std::string dump(const GenOutput& g) {
  std::ostringstream out;
  write_snapshots(out, g.snapshots);
  return out.str();
}

TEST(Rng, BelowStaysInRangeAndIsSeeded) {
  Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.below(7));
  }
  EXPECT_THROW(a.below(0), ContractViolation);
}

TEST(Names, SpreadsheetStyle) {
  EXPECT_EQ(base_feature_name(0), "A");
  EXPECT_EQ(base_feature_name(25), "Z");
  EXPECT_EQ(base_feature_name(26), "AA");
  EXPECT_EQ(default_life_cycles(12).size(), 12u);
  EXPECT_EQ(default_life_cycles(12)[10], default_life_cycles(12)[0]);
}

TEST(Generate, DeterministicPerSeed) {
  EXPECT_EQ(dump(generate(small(3))), dump(generate(small(3))));
  EXPECT_NE(dump(generate(small(3))), dump(generate(small(4))));
}

TEST(Generate, DiffYieldsRequestedEventCount) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate(small(seed));
    const auto series = diff_snapshots(g.snapshots);
    EXPECT_EQ(series.instance_count(), 1500u);
    EXPECT_EQ(g.report.total_events(), 1500u);
    EXPECT_EQ(series.window_count(), 10u);
    EXPECT_EQ(g.snapshots.size(), 11u);
  }
}

TEST(Generate, ZeroChurnPlantsNothing) {
  auto c = small(2);
  c.churn_ratio = 0.0;
  const auto g = generate(c);
  EXPECT_EQ(g.report.planted_events, 0u);
  EXPECT_EQ(g.report.noise_events, 1500u);
}

TEST(Generate, PlantedPatternsAreRecovered) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto c = small(seed);
    const auto g = generate(c);
    const auto series = IndexedSeries::from(diff_snapshots(g.snapshots));
    const auto spans = SpanTable::build(series.catalog(), g.life_cycles, c.time_span);
    MineOptions options;
    options.config.distance_threshold = 2 * c.cluster_radius + 1;
    const auto mined = mine_maximal(series, spans, options);
    for (const auto& cluster : g.report.clusters) {
      if (cluster.sites == 0) continue;
      std::vector<FeatureId> ids;
      for (const auto& f : cluster.features) ids.push_back(*series.catalog().find(f));
      const Pattern planted(ids);
      const bool covered = std::any_of(
          mined.patterns.begin(), mined.patterns.end(),
          [&](const PatternResult& r) { return planted.is_subset_of(r.pattern); });
      EXPECT_TRUE(covered) << "seed " << seed << " pattern "
                           << format_pattern(planted, series.catalog());
    }
  }
}

TEST(Config, Validation) {
  GenConfig c;
  c.churn_ratio = 1.5;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = {};
  c.n_time_points = 1;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = {};
  c.life_cycles.pop_back();
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = {};
  EXPECT_THROW(c.set("bogus", "1"), InvalidConfig);
  EXPECT_THROW(c.set("seed", "x"), InvalidConfig);
  c.set("cluster_radius", "9.5");
  EXPECT_DOUBLE_EQ(c.cluster_radius, 9.5);
}

TEST(Config, ParseFile) {
  std::istringstream ok("# comment\nseed = 9\n\nn_base_features = 4\n");
  const auto c = parse_gen_config(ok);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.life_cycles.size(), 4u);
  std::istringstream bad("seed = 9\nnonsense\n");
  try {
    parse_gen_config(bad);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace dyncoloc
