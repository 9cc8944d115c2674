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

#include "dyncoloc/model.hpp"

namespace dyncoloc {
namespace {

TEST(SpanConstraint, NewFeatureUsesCeilingOfQuotient) {
  EXPECT_EQ(span_constraint(Kind::New, 75.0, 3.0), 25u);
  EXPECT_EQ(span_constraint(Kind::New, 10.0, 3.0), 4u);
  EXPECT_EQ(span_constraint(Kind::New, 3.0, 3.0), 1u);
  EXPECT_EQ(span_constraint(Kind::New, 1.0, 3.0), 1u);
}

TEST(SpanConstraint, DeadFeatureIsAlwaysOne) {
  EXPECT_EQ(span_constraint(Kind::Dead, 75.0, 3.0), 1u);
  EXPECT_EQ(span_constraint(Kind::Dead, 0.5, 3.0), 1u);
}

TEST(SpanConstraint, FloatingQuotientSnapsToInteger) {
  EXPECT_EQ(span_constraint(Kind::New, 1.1, 0.1), 11u);
}

TEST(SpanConstraint, MonotoneInLifeCycle) {
  std::uint32_t prev = 0;
  for (double lc = 0.5; lc < 100.0; lc += 0.7) {
    const auto s = span_constraint(Kind::New, lc, 3.0);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(SpanConstraint, RejectsNonPositiveInputs) {
  EXPECT_THROW(span_constraint(Kind::New, 0.0, 3.0), InvalidConfig);
  EXPECT_THROW(span_constraint(Kind::New, 3.0, 0.0), InvalidConfig);
  EXPECT_THROW(span_constraint(Kind::New, -1.0, 3.0), InvalidConfig);
}

TEST(FeatureName, RoundTrips) {
  const auto f = parse_feature_name("road_a_new");
  ASSERT_TRUE(f);
  EXPECT_EQ(f->base, "road_a");
  EXPECT_EQ(f->kind, Kind::New);
  EXPECT_EQ(f->name(), "road_a_new");
  EXPECT_FALSE(parse_feature_name("A"));
  EXPECT_FALSE(parse_feature_name("A_old"));
  EXPECT_FALSE(parse_feature_name("_new"));
}

TEST(Catalog, SortsAndDeduplicates) {
  FeatureCatalog c({{"B", Kind::New}, {"A", Kind::Dead}, {"A", Kind::New}, {"B", Kind::New}});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.name(0), "A_new");
  EXPECT_EQ(c.name(1), "A_dead");
  EXPECT_EQ(c.name(2), "B_new");
  EXPECT_EQ(c.find({"B", Kind::New}), FeatureId{2});
  EXPECT_FALSE(c.find({"C", Kind::New}));
}

TEST(PatternTest, PermutationsAreEqual) {
  EXPECT_EQ(Pattern({3, 1, 2}), Pattern({1, 2, 3}));
  EXPECT_EQ(Pattern({2, 1}), Pattern({1, 2}));
  EXPECT_NE(Pattern({1, 2}), Pattern({1, 3}));
}

TEST(PatternTest, RejectsRepeatsAndSingletons) {
  EXPECT_THROW(Pattern({1, 1}), ContractViolation);
  EXPECT_THROW(Pattern({1}), ContractViolation);
}

TEST(PatternTest, SubsetsAndShrinking) {
  const Pattern abc{0, 1, 2};
  EXPECT_TRUE(Pattern({0, 2}).is_strict_subset_of(abc));
  EXPECT_FALSE(abc.is_strict_subset_of(abc));
  EXPECT_TRUE(abc.is_subset_of(abc));
  EXPECT_EQ(abc.without_position(1), Pattern({0, 2}));
  EXPECT_THROW(Pattern({0, 1}).without_position(0), ContractViolation);
  EXPECT_EQ(abc.position_of(2), std::size_t{2});
  EXPECT_FALSE(abc.position_of(5));
}

TEST(PatternTest, SizeThenLexOrdersBySizeFirst) {
  SizeThenLex less;
  EXPECT_TRUE(less(Pattern({5, 6}), Pattern({0, 1, 2})));
  EXPECT_TRUE(less(Pattern({0, 1}), Pattern({0, 2})));
  EXPECT_FALSE(less(Pattern({0, 1, 2}), Pattern({5, 6})));
}

TEST(Config, DefaultsValidate) {
  MiningConfig c;
  EXPECT_DOUBLE_EQ(c.distance_threshold, 35.0);
  EXPECT_DOUBLE_EQ(c.min_prevalence, 0.1);
  EXPECT_DOUBLE_EQ(c.time_span, 3.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsBadValues) {
  MiningConfig c;
  c.distance_threshold = 0;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = {};
  c.min_prevalence = 1.5;
  EXPECT_THROW(c.validate(), InvalidConfig);
  c = {};
  c.time_span = -2;
  EXPECT_THROW(c.validate(), InvalidConfig);
}

TEST(Config, PrevalenceComparison) {
  MiningConfig c;
  c.min_prevalence = 0.5;
  EXPECT_TRUE(passes_prevalence(0.5, c));
  c.prevalence = Comparison::Strict;
  EXPECT_FALSE(passes_prevalence(0.5, c));
  EXPECT_TRUE(passes_prevalence(0.51, c));
}

TEST(Spans, BuildRequiresLifeCycle) {
  FeatureCatalog c({{"A", Kind::New}, {"A", Kind::Dead}, {"B", Kind::New}});
  const auto spans = SpanTable::build(c, {{"A", 9.0}, {"B", 4.0}}, 3.0);
  EXPECT_EQ(spans[0], 3u);
  EXPECT_EQ(spans[1], 1u);
  EXPECT_EQ(spans[2], 2u);
  EXPECT_EQ(spans.max_span(), 3u);
  EXPECT_THROW(SpanTable::build(c, {{"A", 9.0}}, 3.0), InvalidConfig);
}

}  // namespace
}  // namespace dyncoloc
