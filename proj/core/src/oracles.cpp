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

#include "dyncoloc/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>

#include "dyncoloc/parallel.hpp"

namespace dyncoloc {
namespace {

bool within_reach(const IndexedInstance& a, const IndexedInstance& b, const SpanTable& spans,
                  const MiningConfig& config) {
  if (a.feature == b.feature) return false;
  const long dt = std::labs(static_cast<long>(a.t_index) - static_cast<long>(b.t_index));
  const long reach = std::max(spans[a.feature], spans[b.feature]);
  const bool in_time = config.temporal == Comparison::Inclusive ? dt <= reach : dt < reach;
  return in_time && distance(a.position, b.position) <= config.distance_threshold;
}

void mark_maximal(std::vector<PatternResult>& results) {
  // Downward closure means checking the next size up is enough, but the
  // full check keeps this independent of that property.
  for (PatternResult& r : results) {
    r.maximal = std::none_of(results.begin(), results.end(), [&](const PatternResult& other) {
      return r.pattern.is_strict_subset_of(other.pattern);
    });
  }
}

std::uint64_t pair_key(InstanceId a, InstanceId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

std::vector<NeighborPair> all_pairs_neighbors(const IndexedSeries& series, const SpanTable& spans,
                                              const MiningConfig& config) {
  config.validate();
  if (spans.size() < series.catalog().size()) throw InvalidConfig("span table too short");
  std::vector<NeighborPair> pairs;
  for (InstanceId a = 0; a < series.size(); ++a) {
    for (InstanceId b = a + 1; b < series.size(); ++b) {
      if (within_reach(series[a], series[b], spans, config)) pairs.push_back({a, b});
    }
  }
  return pairs;
}

std::vector<PatternResult> join_based_mine(const IndexedSeries& series, const SpanTable& spans,
                                           const MiningConfig& config, JoinStats* stats,
                                           unsigned threads) {
  const auto pairs = neighbor_pairs(series, spans, config, threads);
  const FeatureCounts& counts = series.counts();
  std::unordered_set<std::uint64_t> neighbors;
  neighbors.reserve(pairs.size() * 2);
  for (const NeighborPair& p : pairs) neighbors.insert(pair_key(p.first, p.second));

  std::vector<PatternResult> results;
  std::vector<TableInstance> level;
  for (auto& [pattern, table] : prevalent_size2(size2_table_instances(pairs, series), counts, config)) {
    results.push_back({pattern, dpi(table, counts), table.row_count(), false});
    level.push_back(std::move(table));
  }
  JoinStats local;
  if (!level.empty()) local.levels = 2;

  while (level.size() >= 2) {
    const std::size_t k = level.front().width() + 1;
    std::set<Pattern> prevalent_prev;
    for (const TableInstance& t : level) prevalent_prev.insert(t.pattern);

    // Candidate generation: join on a shared (k-2)-prefix, then drop
    // candidates with a non-prevalent (k-1)-subset.
    std::vector<std::pair<std::size_t, std::size_t>> joins;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const Pattern& a = level[i].pattern;
        const Pattern& b = level[j].pattern;
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
        std::vector<FeatureId> merged(a.begin(), a.end());
        merged.push_back(b[b.size() - 1]);
        const Pattern candidate(std::move(merged));
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && closed; ++drop) {
          closed = prevalent_prev.contains(candidate.without_position(drop));
        }
        if (closed) joins.emplace_back(i, j);
      }
    }
    local.candidates += joins.size();

    std::vector<TableInstance> built(joins.size());
    parallel_for(joins.size(), threads, [&](std::size_t n) {
      const TableInstance& left = level[joins[n].first];
      const TableInstance& right = level[joins[n].second];
      std::vector<FeatureId> features(left.pattern.begin(), left.pattern.end());
      features.push_back(right.pattern[right.width() - 1]);
      TableInstance table{Pattern(std::move(features)), {}};
      const std::size_t w = left.width();
      // Rows are sorted, so equal prefixes form contiguous runs in both tables.
      std::size_t r = 0, s = 0;
      auto prefix_cmp = [&](std::size_t lr, std::size_t rr) {
        const auto lrow = left.row(lr);
        const auto rrow = right.row(rr);
        for (std::size_t c = 0; c + 1 < w; ++c) {
          if (lrow[c] != rrow[c]) return lrow[c] < rrow[c] ? -1 : 1;
        }
        return 0;
      };
      while (r < left.row_count() && s < right.row_count()) {
        const int cmp = prefix_cmp(r, s);
        if (cmp < 0) { ++r; continue; }
        if (cmp > 0) { ++s; continue; }
        std::size_t r_end = r + 1, s_end = s + 1;
        while (r_end < left.row_count() && prefix_cmp(r_end, s) == 0) ++r_end;
        while (s_end < right.row_count() && prefix_cmp(r, s_end) == 0) ++s_end;
        for (std::size_t x = r; x < r_end; ++x) {
          const auto lrow = left.row(x);
          for (std::size_t y = s; y < s_end; ++y) {
            const InstanceId tail = right.row(y)[w - 1];
            if (neighbors.contains(pair_key(lrow[w - 1], tail))) {
              table.cells.insert(table.cells.end(), lrow.begin(), lrow.end());
              table.cells.push_back(tail);
            }
          }
        }
        r = r_end;
        s = s_end;
      }
      table.normalize();
      built[n] = std::move(table);
    });

    std::vector<TableInstance> next;
    for (TableInstance& table : built) {
      const double value = dpi(table, counts);
      if (!passes_prevalence(value, config)) continue;
      results.push_back({table.pattern, value, table.row_count(), false});
      next.push_back(std::move(table));
    }
    std::sort(next.begin(), next.end(),
              [](const TableInstance& a, const TableInstance& b) { return a.pattern < b.pattern; });
    if (!next.empty()) local.levels = k;
    level = std::move(next);
  }

  std::sort(results.begin(), results.end(), [](const PatternResult& a, const PatternResult& b) {
    return SizeThenLex{}(a.pattern, b.pattern);
  });
  mark_maximal(results);
  if (stats != nullptr) *stats = local;
  return results;
}

BruteForceResult brute_force_mine(const IndexedSeries& series, const SpanTable& spans,
                                  const MiningConfig& config, const OracleConfig& caps) {
  config.validate();
  std::set<std::string> bases;
  for (const DynamicFeature& f : series.catalog().features()) bases.insert(f.base);
  if (bases.size() > caps.max_base_features) {
    throw OracleCapExceeded("brute-force oracle refuses " + std::to_string(bases.size()) +
                            " base features (cap " + std::to_string(caps.max_base_features) + ")");
  }
  if (series.size() > caps.max_instances) {
    throw OracleCapExceeded("brute-force oracle refuses " + std::to_string(series.size()) +
                            " instances (cap " + std::to_string(caps.max_instances) + ")");
  }
  if (series.window_count() > caps.max_windows) {
    throw OracleCapExceeded("brute-force oracle refuses " + std::to_string(series.window_count()) +
                            " windows (cap " + std::to_string(caps.max_windows) + ")");
  }
  if (spans.size() < series.catalog().size()) throw InvalidConfig("span table too short");

  const std::size_t n = series.size();
  std::vector<std::vector<char>> related(n, std::vector<char>(n, 0));
  for (InstanceId a = 0; a < n; ++a) {
    for (InstanceId b = a + 1; b < n; ++b) {
      related[a][b] = related[b][a] = within_reach(series[a], series[b], spans, config) ? 1 : 0;
    }
  }

  const std::size_t features = series.catalog().size();
  BruteForceResult result;
  const FeatureCounts& counts = series.counts();

  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << features); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<FeatureId> members;
    for (FeatureId f = 0; f < features; ++f) {
      if (mask & (std::uint64_t{1} << f)) members.push_back(f);
    }

    // Every combination of one instance per member feature, pruned as soon
    // as a chosen instance is unrelated to an earlier one.
    const std::size_t k = members.size();
    std::vector<std::set<InstanceId>> participants(k);
    std::size_t rows = 0;
    std::vector<InstanceId> chosen(k);
    auto search = [&](auto&& self, std::size_t depth) -> void {
      if (depth == k) {
        ++rows;
        for (std::size_t i = 0; i < k; ++i) participants[i].insert(chosen[i]);
        return;
      }
      const InstanceId first = series.first_of(members[depth]);
      const auto count = series.instances_of(members[depth]).size();
      for (InstanceId x = first; x < first + count; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < depth && ok; ++i) ok = related[chosen[i]][x] != 0;
        if (!ok) continue;
        chosen[depth] = x;
        self(self, depth + 1);
      }
    };
    search(search, 0);
    if (rows == 0) continue;

    double index = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t total = counts[members[i]];
      const double ratio = total == 0 ? 0.0
                                      : static_cast<double>(participants[i].size()) /
                                            static_cast<double>(total);
      index = std::min(index, ratio);
    }
    if (passes_prevalence(index, config)) {
      result.prevalent.push_back({Pattern(std::move(members)), index, rows, false});
    }
  }

  std::sort(result.prevalent.begin(), result.prevalent.end(),
            [](const PatternResult& a, const PatternResult& b) {
              return SizeThenLex{}(a.pattern, b.pattern);
            });
  mark_maximal(result.prevalent);
  for (const PatternResult& r : result.prevalent) {
    if (r.maximal) result.maximal.push_back(r);
  }
  return result;
}

std::vector<PatternResult> brute_force_maximal(const IndexedSeries& series, const SpanTable& spans,
                                               const MiningConfig& config,
                                               const OracleConfig& caps) {
  return brute_force_mine(series, spans, config, caps).maximal;
}

std::vector<FeatureClique> bron_kerbosch(const FeatureGraph& graph) {
  using Set = std::vector<FeatureId>;
  std::vector<FeatureClique> out;
  auto intersect_with = [&](const Set& s, FeatureId v) {
    Set r;
    const auto nb = graph.neighbors(v);
    std::set_intersection(s.begin(), s.end(), nb.begin(), nb.end(), std::back_inserter(r));
    return r;
  };
  Set clique;
  auto recurse = [&](auto&& self, Set candidates, Set excluded) -> void {
    if (candidates.empty() && excluded.empty()) {
      if (clique.size() >= 2) out.emplace_back(clique);
      return;
    }
    // Tomita pivot: the vertex of P u X with most neighbors in P.
    FeatureId pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    for (const Set* side : {&candidates, &excluded}) {
      for (const FeatureId u : *side) {
        const std::size_t c = intersect_with(candidates, u).size();
        if (!have_pivot || c > best) {
          pivot = u;
          best = c;
          have_pivot = true;
        }
      }
    }
    Set branch;
    const auto pivot_nb = graph.neighbors(pivot);
    std::set_difference(candidates.begin(), candidates.end(), pivot_nb.begin(), pivot_nb.end(),
                        std::back_inserter(branch));
    for (const FeatureId v : branch) {
      clique.push_back(v);
      self(self, intersect_with(candidates, v), intersect_with(excluded, v));
      clique.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  };
  const auto vertices = graph.vertices();
  recurse(recurse, Set(vertices.begin(), vertices.end()), Set{});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dyncoloc
