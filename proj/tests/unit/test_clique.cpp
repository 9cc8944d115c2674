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

#include "dyncoloc/clique.hpp"
#include "dyncoloc/datagen.hpp"
#include "dyncoloc/oracles.hpp"

namespace dyncoloc {
namespace {

using Edges = std::vector<std::pair<FeatureId, FeatureId>>;

FeatureGraph random_graph(Rng& rng, FeatureId n, double density) {
  Edges edges;
  for (FeatureId a = 0; a < n; ++a) {
    for (FeatureId b = a + 1; b < n; ++b) {
      if (rng.unit() < density) edges.push_back({a, b});
    }
  }
  std::vector<FeatureId> all(n);
  for (FeatureId v = 0; v < n; ++v) all[v] = v;
  return FeatureGraph::from_edges(edges, all);
}

// Subset enumeration; fine for graphs up to ~14 vertices.
std::vector<Pattern> subset_oracle(const FeatureGraph& g) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = __builtin_popcount(mask) >= 2;
    for (std::size_t i = 0; ok && i < n; ++i) {
      for (std::size_t j = i + 1; ok && j < n; ++j) {
        if ((mask >> i & 1) && (mask >> j & 1) && !g.adjacent(vs[i], vs[j])) ok = false;
      }
    }
    if (ok) cliques.push_back(mask);
  }
  std::vector<Pattern> out;
  for (std::uint32_t m : cliques) {
    const bool maximal = std::none_of(cliques.begin(), cliques.end(), [&](std::uint32_t o) {
      return o != m && (o & m) == m;
    });
    if (!maximal) continue;
    std::vector<FeatureId> f;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1) f.push_back(vs[i]);
    }
    out.emplace_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Cliques, SampleGraph) {
  // A_new=0 A_dead=1 B_new=2 B_dead=3 C_new=4 C_dead=5
  const Edges e{{0, 2}, {1, 2}, {1, 5}, {2, 5}, {1, 3}, {0, 4}};
  const auto got = maximal_cliques(FeatureGraph::from_edges(e));
  const std::vector<Pattern> want{{0, 2}, {0, 4}, {1, 2, 5}, {1, 3}};
  EXPECT_EQ(got, want);
}

TEST(Cliques, CompleteGraphIsOneClique) {
  Edges e;
  for (FeatureId a = 0; a < 7; ++a) {
    for (FeatureId b = a + 1; b < 7; ++b) e.push_back({a, b});
  }
  const auto got = maximal_cliques(FeatureGraph::from_edges(e));
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].size(), 7u);
}

TEST(Cliques, EmptyAndEdgelessGraphs) {
  EXPECT_TRUE(maximal_cliques(FeatureGraph{}).empty());
  const std::vector<FeatureId> lone{1, 2, 3};
  EXPECT_TRUE(maximal_cliques(FeatureGraph::from_edges({}, lone)).empty());
}

TEST(Cliques, SmallRandomGraphsMatchSubsetOracle) {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<FeatureId>(2 + rng.below(11));
    const auto g = random_graph(rng, n, rng.uniform(0.1, 0.8));
    EXPECT_EQ(maximal_cliques(g), subset_oracle(g)) << "graph " << i;
    EXPECT_EQ(bron_kerbosch(g), subset_oracle(g)) << "graph " << i;
  }
}

TEST(Cliques, RandomGraphsMatchBronKerbosch) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<FeatureId>(2 + rng.below(39));
    const auto g = random_graph(rng, n, rng.uniform(0.1, 0.6));
    EXPECT_EQ(maximal_cliques(g), bron_kerbosch(g)) << "graph " << i;
  }
}

}  // namespace
}  // namespace dyncoloc
