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

#include <set>

#include "dyncoloc/oracles.hpp"
#include "fixtures.hpp"

namespace dyncoloc {
namespace {

using test::pat;

TEST(JoinMiner, SampleEveryPrevalentPattern) {
  const auto s = IndexedSeries::from(test::sample_series());
  const auto spans = SpanTable::build(s.catalog(), test::sample_life_cycles(), 3.0);
  JoinStats stats;
  const auto all = join_based_mine(s, spans, test::sample_config(), &stats);
  ASSERT_EQ(all.size(), 7u);
  EXPECT_EQ(all.back().pattern, pat(s.catalog(), {"A_dead", "B_new", "C_dead"}));
  EXPECT_DOUBLE_EQ(all.back().dpi, 0.5);
  EXPECT_EQ(all.back().row_count, 1u);
  EXPECT_EQ(stats.levels, 3u);
}

TEST(JoinMiner, NoPairsGivesNothing) {
  DynamicDatasetSeries far;
  far.windows.resize(1);
  far.windows[0].push_back(test::dyn("A", Kind::New, 1, 0, 0, 0));
  far.windows[0].push_back(test::dyn("B", Kind::New, 1, 500, 0, 0));
  const auto s = IndexedSeries::from(far);
  const auto spans = SpanTable::build(s.catalog(), {{"A", 3}, {"B", 3}}, 3.0);
  EXPECT_TRUE(join_based_mine(s, spans, test::sample_config()).empty());
  EXPECT_TRUE(brute_force_maximal(s, spans, test::sample_config()).empty());
}

TEST(JoinMiner, DownwardClosedAndAgreesWithBruteForce) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto rc = test::random_case(seed);
    const auto s = IndexedSeries::from(rc.series);
    const auto spans = SpanTable::build(s.catalog(), rc.life_cycles, 3.0);
    const auto join = join_based_mine(s, spans, rc.config);
    std::set<Pattern> found;
    for (const auto& r : join) found.insert(r.pattern);
    for (const auto& r : join) {
      if (r.pattern.size() < 3) continue;
      for (std::size_t i = 0; i < r.pattern.size(); ++i) {
        EXPECT_TRUE(found.count(r.pattern.without_position(i))) << "seed " << seed;
      }
    }
    const auto brute = brute_force_mine(s, spans, rc.config);
    ASSERT_EQ(brute.prevalent.size(), join.size()) << "seed " << seed;
    for (std::size_t i = 0; i < join.size(); ++i) {
      EXPECT_EQ(brute.prevalent[i].pattern, join[i].pattern);
      EXPECT_NEAR(brute.prevalent[i].dpi, join[i].dpi, 1e-12);
    }
  }
}

TEST(BruteForce, SingleFeatureHasNoPatterns) {
  DynamicDatasetSeries one;
  one.windows.resize(1);
  one.windows[0].push_back(test::dyn("A", Kind::New, 1, 0, 0, 0));
  one.windows[0].push_back(test::dyn("A", Kind::New, 2, 1, 0, 0));
  const auto s = IndexedSeries::from(one);
  const auto spans = SpanTable::build(s.catalog(), {{"A", 3}}, 3.0);
  const auto r = brute_force_mine(s, spans, test::sample_config());
  EXPECT_TRUE(r.prevalent.empty());
  EXPECT_TRUE(r.maximal.empty());
}

TEST(BruteForce, RefusesOversizedInput) {
  DynamicDatasetSeries wide;
  wide.windows.resize(1);
  LifeCycles lc;
  for (std::uint32_t b = 0; b < 9; ++b) {
    const std::string name(1, static_cast<char>('A' + b));
    wide.windows[0].push_back(test::dyn(name, Kind::New, 1, b, 0, 0));
    lc[name] = 3;
  }
  const auto s = IndexedSeries::from(wide);
  const auto spans = SpanTable::build(s.catalog(), lc, 3.0);
  EXPECT_THROW(brute_force_mine(s, spans, test::sample_config()), OracleCapExceeded);
  OracleConfig caps;
  caps.max_base_features = 9;
  EXPECT_NO_THROW(brute_force_mine(s, spans, test::sample_config(), caps));
}

TEST(BronKerbosch, TriangleWithTail) {
  const std::vector<std::pair<FeatureId, FeatureId>> e{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  const auto got = bron_kerbosch(FeatureGraph::from_edges(e));
  EXPECT_EQ(got, (std::vector<Pattern>{{0, 1, 2}, {2, 3}}));
}

}  // namespace
}  // namespace dyncoloc
