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

#include "dyncoloc/clique.hpp"

#include <algorithm>
#include <cstdint>

namespace dyncoloc {
namespace {

// Works on local vertex indices 0..n-1 (ascending index = ascending FeatureId).
class DegreeFirstSearch {
 public:
  explicit DegreeFirstSearch(const FeatureGraph& graph)
      : ids_(graph.vertices().begin(), graph.vertices().end()),
        adjacent_(ids_.size(), std::vector<char>(ids_.size(), 0)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      for (std::size_t j = i + 1; j < ids_.size(); ++j) {
        if (graph.adjacent(ids_[i], ids_[j])) adjacent_[i][j] = adjacent_[j][i] = 1;
      }
    }
  }

  std::vector<std::vector<FeatureId>> run() {
    std::vector<int> all(ids_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    expand(all);
    return std::move(found_);
  }

 private:
  bool has_edge(const std::vector<int>& set) const {
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (adjacent_[set[i]][set[j]]) return true;
      }
    }
    return false;
  }

  void emit(std::initializer_list<int> extra) {
    std::vector<FeatureId> clique;
    clique.reserve(partial_.size() + extra.size());
    for (const int v : partial_) clique.push_back(ids_[v]);
    for (const int v : extra) clique.push_back(ids_[v]);
    std::sort(clique.begin(), clique.end());
    found_.push_back(std::move(clique));
  }

  // Adds `root` to the partial clique and closes or recurses over `link`.
  void branch(int root, const std::vector<int>& link) {
    partial_.push_back(root);
    if (has_edge(link)) {
      expand(link);
    } else if (link.empty()) {
      emit({});
    } else {
      for (const int v : link) emit({v});
    }
    partial_.pop_back();
  }

  void expand(const std::vector<int>& set) {
    if (set.empty()) return;
    int root = set.front();
    std::size_t best = 0;
    for (const int v : set) {
      std::size_t degree = 0;
      for (const int u : set) degree += adjacent_[v][u];
      if (degree > best) {
        best = degree;
        root = v;
      }
    }

    std::vector<int> link;
    std::vector<int> not_link;
    for (const int v : set) {
      if (v == root) continue;
      (adjacent_[root][v] ? link : not_link).push_back(v);
    }
    branch(root, link);

    // Each non-neighbor becomes a root over its neighbors among the
    // not-yet-rooted non-neighbors and the first root's neighborhood.
    for (std::size_t i = 0; i < not_link.size(); ++i) {
      const int next_root = not_link[i];
      std::vector<int> second;
      for (std::size_t j = i + 1; j < not_link.size(); ++j) {
        if (adjacent_[next_root][not_link[j]]) second.push_back(not_link[j]);
      }
      for (const int v : link) {
        if (adjacent_[next_root][v]) second.push_back(v);
      }
      std::sort(second.begin(), second.end());
      branch(next_root, second);
    }
  }

  std::vector<FeatureId> ids_;
  std::vector<std::vector<char>> adjacent_;
  std::vector<int> partial_;
  std::vector<std::vector<FeatureId>> found_;
};

}  // namespace

std::vector<FeatureClique> maximal_cliques(const FeatureGraph& graph) {
  auto raw = DegreeFirstSearch(graph).run();
  std::erase_if(raw, [](const auto& c) { return c.size() < 2; });
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  // Subset filter on vertex bitmasks; larger cliques first so each one is
  // only compared with already-kept cliques.
  const auto vertices = graph.vertices();
  const std::size_t words = (vertices.size() + 63) / 64;
  auto mask_of = [&](const std::vector<FeatureId>& members) {
    std::vector<std::uint64_t> mask(words, 0);
    for (const FeatureId f : members) {
      const auto i = static_cast<std::size_t>(
          std::lower_bound(vertices.begin(), vertices.end(), f) - vertices.begin());
      mask[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return mask;
  };
  std::stable_sort(raw.begin(), raw.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::vector<std::uint64_t>> kept_masks;
  std::vector<FeatureClique> kept;
  for (auto& members : raw) {
    auto mask = mask_of(members);
    const bool subsumed = std::any_of(kept_masks.begin(), kept_masks.end(), [&](const auto& k) {
      for (std::size_t w = 0; w < words; ++w) {
        if ((mask[w] & ~k[w]) != 0) return false;
      }
      return true;
    });
    if (subsumed) continue;
    kept_masks.push_back(std::move(mask));
    kept.emplace_back(std::move(members));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace dyncoloc
