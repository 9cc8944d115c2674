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

#include "dyncoloc/pipeline.hpp"
#include "fixtures.hpp"

namespace dyncoloc {
namespace {

TEST(Pipeline, SampleMaximal) {
  const auto s = IndexedSeries::from(test::sample_series());
  const auto spans = SpanTable::build(s.catalog(), test::sample_life_cycles(), 3.0);
  MineOptions o;
  o.config = test::sample_config();
  const auto r = mine_maximal(s, spans, o);
  EXPECT_EQ(r.maximal_count, 4u);
  EXPECT_EQ(r.prevalent_count, 7u);
  EXPECT_EQ(r.neighbor_pairs, 10u);
  EXPECT_EQ(r.prevalent_size2, 6u);
  EXPECT_EQ(r.cliques, 4u);
  EXPECT_EQ(r.patterns.size(), 4u);
  EXPECT_FALSE(r.timings.empty());
}

TEST(Pipeline, DeriveAllMatchesJoin) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto rc = test::random_case(seed);
    const auto s = IndexedSeries::from(rc.series);
    const auto spans = SpanTable::build(s.catalog(), rc.life_cycles, 3.0);
    MineOptions o;
    o.config = rc.config;
    o.derive_all = true;
    const auto mdc = mine_maximal(s, spans, o);
    const auto join = mine_join(s, spans, o);
    ASSERT_EQ(mdc.patterns.size(), join.patterns.size()) << "seed " << seed;
    for (std::size_t i = 0; i < mdc.patterns.size(); ++i) {
      EXPECT_EQ(mdc.patterns[i].pattern, join.patterns[i].pattern);
      EXPECT_NEAR(mdc.patterns[i].dpi, join.patterns[i].dpi, 1e-12);
      EXPECT_EQ(mdc.patterns[i].maximal, join.patterns[i].maximal);
    }
    EXPECT_EQ(mdc.prevalent_count, join.prevalent_count);
    EXPECT_EQ(mdc.maximal_count, join.maximal_count);
  }
}

TEST(Pipeline, CoveredPatternCount) {
  EXPECT_EQ(count_covered_patterns(std::vector<Pattern>{}), 0u);
  // 4 + 6 + 1 subsets of a 4-set, plus one new pair.
  EXPECT_EQ(count_covered_patterns(std::vector<Pattern>{{0, 1, 2, 3}, {3, 4}}), 12u);
  EXPECT_EQ(count_covered_patterns(std::vector<Pattern>{{0, 1, 2}, {1, 2, 3}}), 7u);
}

TEST(Pipeline, LifeCyclesMustMatchData) {
  EXPECT_NO_THROW(check_life_cycles({{"A", 1}, {"B", 2}}, {"A", "B"}));
  EXPECT_THROW(check_life_cycles({{"A", 1}}, {"A", "B"}), InvalidConfig);
  EXPECT_THROW(check_life_cycles({{"A", 1}, {"Z", 1}}, {"A"}), InvalidConfig);
}

}  // namespace
}  // namespace dyncoloc
