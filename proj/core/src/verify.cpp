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

#include "dyncoloc/verify.hpp"

#include <algorithm>
#include <limits>
#include <array>
#include <bit>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dyncoloc/parallel.hpp"

namespace dyncoloc {
namespace {

// ---------------------------------------------------------------------------
// Size-2 tables indexed by feature pair
// ---------------------------------------------------------------------------

// Id range [lo, lo + size) covering one feature's instances in the tables.
struct IdRange {
  InstanceId lo = 0;
  std::size_t size = 0;

  bool contains(InstanceId x) const noexcept { return x >= lo && x - lo < size; }
};

// Rows of one size-2 table read from the `from` side, sorted by (from, to),
// with the distinct `from` instances and per-instance row offsets.
struct EdgeView {
  const TableInstance* table = nullptr;
  const InstanceId* data = nullptr;
  std::size_t rows = 0;
  IdRange from_ids;
  std::vector<InstanceId> keys;
  std::vector<std::uint32_t> starts;  // rows of instance lo + i are [starts[i], starts[i + 1])
  std::vector<InstanceId> owned;      // transposed copy when `from` is column 1

  InstanceId from(std::size_t r) const noexcept { return data[2 * r]; }
  InstanceId to(std::size_t r) const noexcept { return data[2 * r + 1]; }

  /// Row range [first, last) whose from-side equals `x`.
  std::pair<std::size_t, std::size_t> range(InstanceId x) const noexcept {
    if (!from_ids.contains(x)) return {0, 0};
    const std::size_t i = x - from_ids.lo;
    return {starts[i], starts[i + 1]};
  }

  bool contains(InstanceId x, InstanceId y) const noexcept {
    const auto [first, last] = range(x);
    const InstanceId* begin = data + 2 * first;
    std::size_t lo = 0, hi = last - first;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (begin[2 * mid + 1] < y) lo = mid + 1; else hi = mid;
    }
    return lo < last - first && begin[2 * lo + 1] == y;
  }
};

// Read-only after construction, so it can be shared by worker threads.
class EdgeIndex {
 public:
  explicit EdgeIndex(const Size2Tables& size2, bool both_directions = false,
                     bool with_presence = false) {
    for (const auto& [pattern, table] : size2) {
      if (pattern.size() != 2) continue;
      for (std::size_t r = 0; r < table.row_count(); ++r) {
        widen(pattern[0], table.cells[2 * r]);
        widen(pattern[1], table.cells[2 * r + 1]);
      }
    }
    views_.reserve(size2.size() * (both_directions ? 2 : 1));
    for (const auto& [pattern, table] : size2) {
      if (pattern.size() != 2) continue;
      add_forward(pattern[0], pattern[1], table);
      if (both_directions) add_reverse(pattern[1], pattern[0], table);
      if (with_presence && table.row_count() > 0) {
        add_presence(pattern[0], pattern[1], table, 0);
        add_presence(pattern[1], pattern[0], table, 1);
      }
    }
  }

  const EdgeView& get(FeatureId from, FeatureId to) const {
    const auto it = views_.find(key(from, to));
    if (it == views_.end()) throw ContractViolation("missing size-2 table for a clique edge");
    return it->second;
  }

  /// Ids of `feature` seen in any table; empty when it occurs in none.
  IdRange ids(FeatureId feature) const {
    const auto it = ids_.find(feature);
    return it == ids_.end() ? IdRange{} : it->second;
  }

  bool has_presence() const noexcept { return !presence_.empty(); }

  /// Bitset over ids(from) marking instances with a partner of feature
  /// `to`; null when the table is empty.
  const std::vector<std::uint64_t>* presence(FeatureId from, FeatureId to) const {
    const auto it = presence_.find(key(from, to));
    return it == presence_.end() ? nullptr : &it->second;
  }

 private:
  static std::uint64_t key(FeatureId a, FeatureId b) { return (std::uint64_t{a} << 32) | b; }

  void widen(FeatureId f, InstanceId x) {
    auto [it, fresh] = ids_.try_emplace(f, IdRange{x, 1});
    if (fresh) return;
    IdRange& r = it->second;
    if (x < r.lo) {
      r.size += r.lo - x;
      r.lo = x;
    } else if (x - r.lo >= r.size) {
      r.size = x - r.lo + 1;
    }
  }

  void index_rows(EdgeView& v, FeatureId from) {
    v.from_ids = ids(from);
    v.starts.assign(v.from_ids.size + 1, 0);
    for (std::size_t r = 0; r < v.rows; ++r) {
      if (v.keys.empty() || v.keys.back() != v.from(r)) v.keys.push_back(v.from(r));
      ++v.starts[v.from(r) - v.from_ids.lo + 1];
    }
    for (std::size_t i = 1; i < v.starts.size(); ++i) v.starts[i] += v.starts[i - 1];
  }

  void add_forward(FeatureId a, FeatureId b, const TableInstance& table) {
    EdgeView& v = views_[key(a, b)];
    v.table = &table;
    v.data = table.cells.data();
    v.rows = table.row_count();
    index_rows(v, a);
  }

  void add_reverse(FeatureId a, FeatureId b, const TableInstance& table) {
    EdgeView& v = views_[key(a, b)];
    v.table = &table;
    TableInstance transposed{table.pattern, {}};
    transposed.cells.reserve(table.cells.size());
    for (std::size_t r = 0; r < table.row_count(); ++r) {
      transposed.cells.push_back(table.cells[2 * r + 1]);
      transposed.cells.push_back(table.cells[2 * r]);
    }
    transposed.normalize();
    v.owned = std::move(transposed.cells);
    v.data = v.owned.data();
    v.rows = v.owned.size() / 2;
    index_rows(v, a);
  }

  void add_presence(FeatureId from, FeatureId to, const TableInstance& table, std::size_t column) {
    const IdRange r = ids(from);
    std::vector<std::uint64_t> bits(r.size / 64 + 1, 0);
    for (std::size_t row = 0; row < table.row_count(); ++row) {
      const InstanceId x = table.cells[2 * row + column] - r.lo;
      bits[x / 64] |= std::uint64_t{1} << (x % 64);
    }
    presence_.emplace(key(from, to), std::move(bits));
  }

  std::unordered_map<FeatureId, IdRange> ids_;
  std::unordered_map<std::uint64_t, EdgeView> views_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> presence_;
};

struct StarBound {
  std::vector<FeatureId> certificate;  // empty when every position passes
  std::vector<std::size_t> hits;       // per position, filled when it passes
  std::vector<std::vector<std::uint64_t>> alive;  // per position, bits over ids()
};

// Upper bound check before any assembly: an instance can only join a row
// when it has a partner of every other feature of the pattern. A failing
// position yields a subset of `features` that provably fails the
// threshold, found greedily from the most selective partners.
StarBound star_bound(std::span<const FeatureId> features, const EdgeIndex& edges,
                     const FeatureCounts& counts, const MiningConfig& config) {
  StarBound result;
  result.hits.assign(features.size(), 0);
  result.alive.resize(features.size());
  auto passes = [&](FeatureId f, std::size_t hits) {
    const std::size_t total = counts[f];
    const double bound = total == 0 ? 0.0
                                    : static_cast<double>(hits) / static_cast<double>(total);
    return passes_prevalence(bound, config);
  };
  auto popcount = [](const std::vector<std::uint64_t>& bits) {
    std::size_t n = 0;
    for (const std::uint64_t x : bits) n += static_cast<std::size_t>(std::popcount(x));
    return n;
  };

  std::vector<std::uint64_t> acc;
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (hits, position)
  for (std::size_t q = 0; q < features.size(); ++q) {
    const FeatureId fq = features[q];
    bool first = true;
    for (std::size_t o = 0; o < features.size(); ++o) {
      if (o == q) continue;
      const auto* bits = edges.presence(fq, features[o]);
      if (bits == nullptr) {
        if (!passes(fq, 0)) {
          result.certificate = {std::min(fq, features[o]), std::max(fq, features[o])};
          return result;
        }
        acc.clear();
        break;
      }
      if (first) {
        acc.assign(bits->begin(), bits->end());
        first = false;
      } else {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= (*bits)[i];
      }
    }
    result.hits[q] = popcount(acc);
    if (passes(fq, result.hits[q])) {
      result.alive[q] = acc;
      continue;
    }

    // Shrink to a failing subset, most selective partners first.
    order.clear();
    for (std::size_t o = 0; o < features.size(); ++o) {
      if (o != q) order.emplace_back(popcount(*edges.presence(fq, features[o])), o);
    }
    std::sort(order.begin(), order.end());
    std::vector<FeatureId> certificate{fq};
    for (std::size_t n = 0; n < order.size(); ++n) {
      const auto& bits = *edges.presence(fq, features[order[n].second]);
      if (n == 0) {
        acc.assign(bits.begin(), bits.end());
      } else {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= bits[i];
      }
      certificate.push_back(features[order[n].second]);
      if (!passes(fq, popcount(acc))) break;
    }
    std::sort(certificate.begin(), certificate.end());
    result.certificate = std::move(certificate);
    return result;
  }
  return result;
}

// Narrows the star-bound survivors to instances with a surviving partner
// in every other position, repeated until stable. Returns false once a
// position provably fails the threshold.
bool arc_consistency(std::span<const FeatureId> features, const EdgeIndex& edges,
                     const FeatureCounts& counts, const MiningConfig& config, StarBound& star) {
  const std::size_t k = features.size();
  std::vector<IdRange> ids(k);
  for (std::size_t q = 0; q < k; ++q) ids[q] = edges.ids(features[q]);

  // A pair (q, o) is rechecked only after position o lost instances.
  std::vector<std::size_t> version(k, 1), checked(k * k, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < k; ++q) {
      std::vector<std::uint64_t>& bits = star.alive[q];
      const InstanceId lo = ids[q].lo;
      std::size_t removed = 0;
      for (std::size_t o = 0; o < k; ++o) {
        if (o == q || checked[q * k + o] == version[o]) continue;
        checked[q * k + o] = version[o];
        const EdgeView& view = edges.get(features[q], features[o]);
        const std::uint64_t* partner = star.alive[o].data();
        const InstanceId partner_lo = ids[o].lo;
        for (std::size_t w = 0; w < bits.size(); ++w) {
          for (std::uint64_t m = bits[w]; m != 0; m &= m - 1) {
            const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
            const auto [first, last] = view.range(lo + static_cast<InstanceId>(i));
            bool supported = false;
            for (std::size_t r = first; r < last && !supported; ++r) {
              const std::size_t j = view.to(r) - partner_lo;
              supported = (partner[j / 64] >> (j % 64)) & 1u;
            }
            if (!supported) {
              bits[w] &= ~(std::uint64_t{1} << (i % 64));
              ++removed;
            }
          }
        }
      }
      if (removed == 0) continue;
      changed = true;
      ++version[q];
      star.hits[q] -= removed;
      const std::size_t total = counts[features[q]];
      const double bound = total == 0 ? 0.0
                                      : static_cast<double>(star.hits[q]) /
                                            static_cast<double>(total);
      if (!passes_prevalence(bound, config)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Row assembly with the early-abort bound
// ---------------------------------------------------------------------------

// Upper bounds on each position's participation. For every non-anchor
// position the distinct partners reachable from the unprocessed common
// instances are reference counted; a partner stops counting as "remaining"
// once no unprocessed common instance links to it.
class ParticipationBound {
 public:
  ParticipationBound(std::span<const FeatureId> features, std::size_t anchor_pos,
                     const std::vector<InstanceId>& common, const std::vector<std::size_t>& others,
                     const std::vector<const EdgeView*>& anchor_views, const FeatureCounts& counts,
                     const EdgeIndex& edges)
      : anchor_pos_(anchor_pos), others_(others), tallies_(features.size(), 0),
        remaining_(features.size(), 0), totals_(features.size(), 0),
        ids_(others.size()), refs_(others.size()), seen_(others.size()) {
    for (std::size_t i = 0; i < features.size(); ++i) totals_[i] = counts[features[i]];
    remaining_[anchor_pos] = common.size();
    for (std::size_t o = 0; o < others.size(); ++o) {
      ids_[o] = edges.ids(features[others[o]]);
      refs_[o].assign(ids_[o].size, 0);
      seen_[o].assign(ids_[o].size, 0);
      std::size_t distinct = 0;
      for (const InstanceId c : common) {
        const auto [first, last] = anchor_views[o]->range(c);
        for (std::size_t r = first; r < last; ++r) {
          if (refs_[o][anchor_views[o]->to(r) - ids_[o].lo]++ == 0) ++distinct;
        }
      }
      remaining_[others[o]] = distinct;
    }
  }

  void record_row(std::span<const InstanceId> row) {
    for (std::size_t o = 0; o < others_.size(); ++o) {
      const std::size_t q = others_[o];
      char& seen = seen_[o][row[q] - ids_[o].lo];
      if (!seen) {
        seen = 1;
        ++tallies_[q];
        --remaining_[q];
      }
    }
  }

  // Called once the rows of common instance `c` are all recorded.
  void finish_common(InstanceId c, bool produced_rows,
                     const std::vector<const EdgeView*>& anchor_views) {
    --remaining_[anchor_pos_];
    if (produced_rows) ++tallies_[anchor_pos_];
    for (std::size_t o = 0; o < others_.size(); ++o) {
      const std::size_t q = others_[o];
      const auto [first, last] = anchor_views[o]->range(c);
      for (std::size_t r = first; r < last; ++r) {
        const std::size_t i = anchor_views[o]->to(r) - ids_[o].lo;
        if (--refs_[o][i] == 0 && !seen_[o][i]) --remaining_[q];
      }
    }
  }

  AbortDecision check(const MiningConfig& config) const {
    return early_abort_check(tallies_, totals_, remaining_, config);
  }

  // True once the rows seen so far already make every position pass.
  bool proven(const MiningConfig& config) const {
    for (std::size_t i = 0; i < tallies_.size(); ++i) {
      const double ratio = totals_[i] == 0 ? 0.0
                                           : static_cast<double>(tallies_[i]) /
                                                 static_cast<double>(totals_[i]);
      if (!passes_prevalence(ratio, config)) return false;
    }
    return true;
  }

 private:
  std::size_t anchor_pos_;
  const std::vector<std::size_t>& others_;
  std::vector<std::size_t> tallies_;
  std::vector<std::size_t> remaining_;
  std::vector<std::size_t> totals_;
  std::vector<IdRange> ids_;
  std::vector<std::vector<std::uint32_t>> refs_;
  std::vector<std::vector<char>> seen_;
};

// How assembly may stop before the table is complete.
struct BoundMode {
  const MiningConfig* config = nullptr;
  bool abort = false;             // stop once the pattern provably fails
  bool stop_when_proven = false;  // stop once the pattern provably passes
  bool pick_anchor = false;       // anchor on the most selective position
};

// Assembles the table instance of `features` (sorted, size >= 3). Returns
// nullopt when `mode` cuts assembly short; `*proven` then tells whether the
// pattern was proven prevalent rather than non-prevalent, and a failing
// subset found by the star bound lands in `*certificate`.
std::optional<TableInstance> assemble(std::span<const FeatureId> features, const EdgeIndex& edges,
                                      std::size_t anchor_pos, const FeatureCounts* counts,
                                      const BoundMode& mode = {}, bool* proven = nullptr,
                                      std::vector<FeatureId>* certificate = nullptr) {
  const MiningConfig* bound_config = mode.config;
  const std::size_t k = features.size();
  // Instances that survive the star bound and arc consistency; rows use
  // no others.
  std::optional<StarBound> star;
  if (mode.abort && edges.has_presence()) {
    star = star_bound(features, edges, *counts, *bound_config);
    if (!star->certificate.empty()) {
      if (certificate != nullptr) *certificate = std::move(star->certificate);
      return std::nullopt;
    }
    if (!arc_consistency(features, edges, *counts, *bound_config, *star)) return std::nullopt;
    if (mode.pick_anchor) {
      anchor_pos = static_cast<std::size_t>(
          std::min_element(star->hits.begin(), star->hits.end()) - star->hits.begin());
    }
  }
  std::vector<std::size_t> others;
  others.reserve(k - 1);
  for (std::size_t q = 0; q < k; ++q) {
    if (q != anchor_pos) others.push_back(q);
  }
  const FeatureId anchor = features[anchor_pos];
  std::vector<const EdgeView*> anchor_views(others.size());
  for (std::size_t o = 0; o < others.size(); ++o) {
    anchor_views[o] = &edges.get(anchor, features[others[o]]);
  }

  // Anchor instances that have a partner in every other feature.
  std::vector<InstanceId> common;
  if (star) {
    const auto& acc = star->alive[anchor_pos];
    const InstanceId lo = edges.ids(anchor).lo;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::uint64_t x = acc[i]; x != 0; x &= x - 1) {
        common.push_back(lo + static_cast<InstanceId>(i * 64 + std::countr_zero(x)));
      }
    }
  } else {
    common = anchor_views.front()->keys;
    for (std::size_t o = 1; o < anchor_views.size() && !common.empty(); ++o) {
      const auto& keys = anchor_views[o]->keys;
      std::size_t kept = 0, j = 0;
      for (const InstanceId c : common) {
        while (j < keys.size() && keys[j] < c) ++j;
        if (j < keys.size() && keys[j] == c) common[kept++] = c;
      }
      common.resize(kept);
    }
  }

  std::optional<ParticipationBound> bound;
  if (bound_config != nullptr) {
    bound.emplace(features, anchor_pos, common, others, anchor_views, *counts, edges);
    if (mode.abort && bound->check(*bound_config) == AbortDecision::Abort) return std::nullopt;
  }

  // pair_views[a * n + b] checks (others[a], others[b]) for a < b.
  const std::size_t n = others.size();
  std::vector<const EdgeView*> pair_views(n * n, nullptr);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      pair_views[a * n + b] = &edges.get(features[others[a]], features[others[b]]);
    }
  }

  TableInstance table{Pattern(std::vector<FeatureId>(features.begin(), features.end())), {}};
  std::vector<InstanceId> row(k);
  std::vector<std::pair<std::size_t, std::size_t>> ranges(n);
  std::vector<std::size_t> cursor(n);
  std::vector<InstanceId> other_lo(n);
  for (std::size_t o = 0; o < n; ++o) other_lo[o] = edges.ids(features[others[o]]).lo;

  for (const InstanceId c : common) {
    row[anchor_pos] = c;
    const std::size_t rows_before = table.row_count();
    for (std::size_t o = 0; o < n; ++o) ranges[o] = anchor_views[o]->range(c);

    // Depth-first cross product over partner lists, checking each new
    // instance against every earlier non-anchor instance of the row.
    std::size_t depth = 0;
    cursor[0] = ranges[0].first;
    while (true) {
      if (cursor[depth] == ranges[depth].second) {
        if (depth == 0) break;
        --depth;
        ++cursor[depth];
        continue;
      }
      const InstanceId x = anchor_views[depth]->to(cursor[depth]);
      bool consistent = true;
      if (star) {
        const std::size_t i = x - other_lo[depth];
        consistent = (star->alive[others[depth]][i / 64] >> (i % 64)) & 1u;
      }
      for (std::size_t a = 0; a < depth && consistent; ++a) {
        consistent = pair_views[a * n + depth]->contains(row[others[a]], x);
      }
      if (!consistent) {
        ++cursor[depth];
        continue;
      }
      row[others[depth]] = x;
      if (depth + 1 == n) {
        table.cells.insert(table.cells.end(), row.begin(), row.end());
        if (bound) bound->record_row(row);
        ++cursor[depth];
      } else {
        ++depth;
        cursor[depth] = ranges[depth].first;
      }
    }

    if (bound) {
      bound->finish_common(c, table.row_count() > rows_before, anchor_views);
      if (mode.abort && bound->check(*bound_config) == AbortDecision::Abort) return std::nullopt;
      if (mode.stop_when_proven && bound->proven(*bound_config)) {
        *proven = true;
        return std::nullopt;
      }
    }
  }

  if (anchor_pos != 0) table.normalize();
  return table;
}

struct Verdict {
  bool prevalent = false;
  bool complete = false;  // false when cut short or inferred without rows
  double dpi = 0.0;
  std::size_t rows = 0;
  std::vector<double> ratios;
  std::vector<FeatureId> certificate;  // proven non-prevalent subset, if found
};

Verdict evaluate(std::span<const FeatureId> features, const EdgeIndex& edges,
                 const FeatureCounts& counts, const MiningConfig& config, bool early_abort,
                 bool stop_when_proven = false) {
  std::optional<TableInstance> assembled;
  const TableInstance* table = nullptr;
  if (features.size() == 2) {
    table = edges.get(features[0], features[1]).table;
  } else {
    bool proven = false;
    const bool bounded = early_abort || stop_when_proven;
    Verdict cut;
    assembled = assemble(features, edges, 0, &counts,
                         {bounded ? &config : nullptr, early_abort, stop_when_proven, early_abort},
                         &proven, &cut.certificate);
    if (!assembled) {
      cut.prevalent = proven;
      return cut;
    }
    table = &*assembled;
  }
  Verdict verdict;
  verdict.complete = true;
  verdict.ratios = participation_ratios(*table, counts);
  verdict.dpi = *std::min_element(verdict.ratios.begin(), verdict.ratios.end());
  verdict.rows = table->row_count();
  verdict.prevalent = passes_prevalence(verdict.dpi, config);
  return verdict;
}

bool contained_in_any(const Pattern& p, std::span<const Pattern> supersets) {
  return std::any_of(supersets.begin(), supersets.end(),
                     [&](const Pattern& s) { return p.is_subset_of(s); });
}

// ---------------------------------------------------------------------------
// Fixed-width feature sets for the verification loop
// ---------------------------------------------------------------------------

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(FeatureId f) noexcept { w[f / 64] |= std::uint64_t{1} << (f % 64); }
  void reset(FeatureId f) noexcept { w[f / 64] &= ~(std::uint64_t{1} << (f % 64)); }
  bool test(FeatureId f) const noexcept { return (w[f / 64] >> (f % 64)) & 1u; }
  bool subset_of(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < W; ++i) {
      if ((w[i] & ~o.w[i]) != 0) return false;
    }
    return true;
  }
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (const auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  template <typename F>
  void each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i) {
      for (std::uint64_t x = w[i]; x != 0; x &= x - 1) {
        f(static_cast<FeatureId>(i * 64 + static_cast<std::size_t>(std::countr_zero(x))));
      }
    }
  }
  std::vector<FeatureId> features() const {
    std::vector<FeatureId> out;
    out.reserve(count());
    each([&](FeatureId f) { out.push_back(f); });
    return out;
  }
  bool operator==(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < W; ++i) {
      if (w[i] != o.w[i]) return false;
    }
    return true;
  }
  // Arbitrary but fixed total order, cheaper than canonical_less.
  bool raw_less(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < W; ++i) {
      if (w[i] != o.w[i]) return w[i] < o.w[i];
    }
    return false;
  }

  static Bits of(const Pattern& p) {
    Bits b;
    for (const FeatureId f : p) b.set(f);
    return b;
  }
};

// Lexicographic order of the sorted feature lists, for sets of equal size:
// the smaller set owns the lowest differing feature.
template <std::size_t W>
bool canonical_less(const Bits<W>& a, const Bits<W>& b) noexcept {
  for (std::size_t i = 0; i < W; ++i) {
    const std::uint64_t x = a.w[i] ^ b.w[i];
    if (x != 0) return (a.w[i] & (x & (~x + 1))) != 0;
  }
  return false;
}

template <std::size_t W>
struct BitsHash {
  std::size_t operator()(const Bits<W>& b) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (const auto x : b.w) {
      h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Minimal known non-prevalent feature sets in a prefix tree over their
// ascending feature lists, answering "smallest stored subset of s".
template <std::size_t W>
class FailedSets {
 public:
  FailedSets() : nodes_(1) {}

  void add(const Bits<W>& set) {
    if (smallest_in(set).count() != 0) return;  // a subset is already stored
    std::size_t node = 0;
    set.each([&](FeatureId f) {
      auto& kids = nodes_[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), f,
                                 [](const auto& c, FeatureId x) { return c.first < x; });
      if (it == kids.end() || it->first != f) {
        it = kids.insert(it, {f, nodes_.size()});
        nodes_.emplace_back();
      }
      node = it->second;
    });
    nodes_[node].terminal = true;
  }

  /// Smallest stored set inside `set`; empty when there is none.
  Bits<W> smallest_in(const Bits<W>& set) const {
    Bits<W> path, best;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    search(0, set, path, 0, best, best_size);
    return best;
  }

 private:
  struct Node {
    std::vector<std::pair<FeatureId, std::size_t>> children;
    bool terminal = false;
  };

  void search(std::size_t node, const Bits<W>& set, Bits<W>& path, std::size_t depth,
              Bits<W>& best, std::size_t& best_size) const {
    if (nodes_[node].terminal) {
      best = path;
      best_size = depth;
      return;
    }
    if (depth + 1 >= best_size) return;
    for (const auto& [f, child] : nodes_[node].children) {
      if (!set.test(f)) continue;
      path.set(f);
      search(child, set, path, depth + 1, best, best_size);
      path.reset(f);
      if (depth + 1 >= best_size) return;
    }
  }

  std::vector<Node> nodes_;
};

template <std::size_t W>
VerifyOutcome run_verify(std::span<const FeatureClique> cliques, const Size2Tables& size2,
                         const FeatureCounts& counts, const MiningConfig& config,
                         PruningFlags pruning, const VerifyOptions& options) {
  using Set = Bits<W>;
  using SetHash = BitsHash<W>;
  const EdgeIndex edges(size2, pruning.early_abort, pruning.early_abort);
  VerifyOutcome outcome;
  VerifyStats& stats = outcome.stats;

  std::unordered_set<Set, SetHash> seen;
  std::map<std::size_t, std::vector<Set>> pending;  // by size
  auto push = [&](const Set& s) {
    if (!seen.insert(s).second) return false;
    pending[s.count()].push_back(s);
    return true;
  };
  for (const FeatureClique& clique : cliques) push(Set::of(clique));

  std::vector<Set> accepted;
  std::unordered_map<Set, Verdict, SetHash> shared_verdicts;
  std::unordered_set<Set, SetHash> passed_shared;  // proven prevalent, DPI unknown

  // Known non-prevalent sets: shared triples and certificates.
  FailedSets<W> failed;

  auto record = [&](const Set& s, const Verdict& verdict) {
    if (options.record_trace && verdict.complete) {
      outcome.trace.push_back({Pattern(s.features()), verdict.ratios, verdict.prevalent});
    }
  };
  auto subsumed = [&](const Set& s) {
    return std::any_of(accepted.begin(), accepted.end(),
                       [&](const Set& a) { return s.subset_of(a); });
  };

  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    const std::size_t k = top->first;
    std::vector<Set> level = std::move(top->second);
    pending.erase(top);
    std::sort(level.begin(), level.end(), canonical_less<W>);

    const std::size_t before = level.size();
    std::erase_if(level, subsumed);
    stats.subsumed_skips += before - level.size();
    if (level.empty()) continue;

    // Triples held by at least two pending candidates are verified first;
    // a non-prevalent one fails every superset without verification.
    if (pruning.shared_subpatterns && k >= 4) {
      std::vector<Set> triples;
      for (const Set& candidate : level) {
        if (failed.smallest_in(candidate).count() != 0) continue;
        const auto f = candidate.features();
        for (std::size_t a = 0; a < f.size(); ++a) {
          for (std::size_t b = a + 1; b < f.size(); ++b) {
            for (std::size_t c = b + 1; c < f.size(); ++c) {
              Set t;
              t.set(f[a]);
              t.set(f[b]);
              t.set(f[c]);
              if (!shared_verdicts.contains(t) && !passed_shared.contains(t)) triples.push_back(t);
            }
          }
        }
      }
      std::sort(triples.begin(), triples.end(),
                [](const Set& x, const Set& y) { return x.raw_less(y); });
      std::vector<Set> shared;
      for (std::size_t i = 0; i < triples.size();) {
        std::size_t j = i + 1;
        while (j < triples.size() && triples[j] == triples[i]) ++j;
        if (j - i >= 2) shared.push_back(triples[i]);
        i = j;
      }
      std::vector<Verdict> verdicts(shared.size());
      parallel_for(shared.size(), options.threads, [&](std::size_t n) {
        const auto features = shared[n].features();
        verdicts[n] = evaluate(features, edges, counts, config, pruning.early_abort,
                               pruning.early_abort);
      });
      for (std::size_t n = 0; n < shared.size(); ++n) {
        Verdict& verdict = verdicts[n];
        ++stats.shared_verified;
        if (verdict.complete) {
          ++stats.tables_built;
        } else if (verdict.prevalent) {
          passed_shared.insert(shared[n]);
          continue;
        } else {
          ++stats.early_aborts;
        }
        record(shared[n], verdict);
        if (!verdict.prevalent) failed.add(shared[n]);
        shared_verdicts.emplace(shared[n], std::move(verdict));
      }
    }

    // blockers[i] is a known non-prevalent set inside candidate i, if any.
    std::vector<Set> blockers(level.size());
    std::vector<std::size_t> to_evaluate;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (shared_verdicts.contains(level[i])) continue;
      if (pruning.shared_subpatterns) blockers[i] = failed.smallest_in(level[i]);
      if (blockers[i].count() == 0) to_evaluate.push_back(i);
    }
    std::vector<Verdict> fresh(to_evaluate.size());
    parallel_for(to_evaluate.size(), options.threads, [&](std::size_t n) {
      const auto features = level[to_evaluate[n]].features();
      fresh[n] = evaluate(features, edges, counts, config, pruning.early_abort && k >= 3);
    });

    std::size_t next_fresh = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Set& candidate = level[i];
      Verdict verdict;
      if (const auto known = shared_verdicts.find(candidate); known != shared_verdicts.end()) {
        verdict = known->second;
      } else if (blockers[i].count() != 0) {
        verdict.prevalent = false;
        ++stats.shared_pruned;
      } else {
        verdict = std::move(fresh[next_fresh++]);
        if (k >= 3) {
          if (verdict.complete) ++stats.tables_built; else ++stats.early_aborts;
        }
        record(candidate, verdict);
      }

      // Same-size patterns never contain each other and larger accepted
      // ones were filtered above, so a prevalent candidate is maximal.
      if (verdict.prevalent) {
        accepted.push_back(candidate);
        outcome.maximal.push_back({Pattern(candidate.features()), verdict.dpi, verdict.rows, true});
      } else if (k >= 3) {
        // A prevalent subset misses some member of every non-prevalent
        // subset, so only the members of a known one need dropping.
        ++stats.decompositions;
        Set drop = blockers[i].count() != 0 ? blockers[i] : candidate;
        if (pruning.shared_subpatterns && blockers[i].count() == 0 &&
            !verdict.certificate.empty()) {
          drop = Set{};
          for (const FeatureId f : verdict.certificate) drop.set(f);
          failed.add(drop);
        }
        Decomposition log;
        drop.each([&](FeatureId f) {
          Set sub = candidate;
          sub.reset(f);
          if (push(sub) && options.record_trace) log.queued.emplace_back(sub.features());
        });
        if (options.record_trace) {
          log.failed = Pattern(candidate.features());
          std::sort(log.queued.begin(), log.queued.end());
          outcome.decompositions.push_back(std::move(log));
        }
      }
    }
  }

  stats.candidates_seen = seen.size();
  std::sort(outcome.maximal.begin(), outcome.maximal.end(),
            [](const PatternResult& a, const PatternResult& b) {
              return SizeThenLex{}(a.pattern, b.pattern);
            });
  return outcome;
}

}  // namespace

TableInstance candidate_table_instance(const FeatureClique& clique, const Size2Tables& size2) {
  return candidate_table_instance(clique, size2, clique[0]);
}

TableInstance candidate_table_instance(const FeatureClique& clique, const Size2Tables& size2,
                                       FeatureId anchor) {
  const auto anchor_pos = clique.position_of(anchor);
  if (!anchor_pos) throw ContractViolation("anchor feature is not part of the clique");
  if (clique.size() == 2) {
    const auto it = size2.find(clique);
    if (it == size2.end()) throw ContractViolation("missing size-2 table for a clique edge");
    return it->second;
  }
  Size2Tables needed;
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = i + 1; j < clique.size(); ++j) {
      const Pattern edge{clique[i], clique[j]};
      const auto it = size2.find(edge);
      if (it == size2.end()) throw ContractViolation("missing size-2 table for a clique edge");
      needed.emplace(edge, it->second);
    }
  }
  const EdgeIndex edges(needed, *anchor_pos != 0);
  return *assemble(clique.features(), edges, *anchor_pos, nullptr);
}

AbortDecision early_abort_check(std::span<const std::size_t> tallies,
                                std::span<const std::size_t> totals,
                                std::span<const std::size_t> remaining, const MiningConfig& config) {
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    const double bound = totals[i] == 0 ? 0.0
                                        : static_cast<double>(tallies[i] + remaining[i]) /
                                              static_cast<double>(totals[i]);
    if (!passes_prevalence(bound, config)) return AbortDecision::Abort;
  }
  return AbortDecision::Continue;
}

bool CandidateQueue::push(const Pattern& candidate, std::span<const Pattern> accepted) {
  if (seen_.contains(candidate) || contained_in_any(candidate, accepted)) return false;
  seen_.insert(candidate);
  pending_.insert(candidate);
  return true;
}

std::vector<Pattern> CandidateQueue::decompose(const Pattern& failed, std::span<const Pattern> accepted) {
  std::vector<Pattern> queued;
  if (failed.size() < 3) return queued;
  for (std::size_t i = 0; i < failed.size(); ++i) {
    Pattern sub = failed.without_position(i);
    if (push(sub, accepted)) queued.push_back(std::move(sub));
  }
  std::sort(queued.begin(), queued.end());
  return queued;
}

std::vector<Pattern> CandidateQueue::take_largest_level() {
  std::vector<Pattern> level;
  if (pending_.empty()) return level;
  const std::size_t size = pending_.begin()->size();
  while (!pending_.empty() && pending_.begin()->size() == size) {
    level.push_back(pending_.extract(pending_.begin()).value());
  }
  return level;
}

VerifyOutcome verify_all(std::span<const FeatureClique> cliques, const Size2Tables& size2,
                         const FeatureCounts& counts, const MiningConfig& config,
                         PruningFlags pruning, const VerifyOptions& options) {
  config.validate();
  std::size_t features = counts.size();
  for (const FeatureClique& c : cliques) {
    if (c.size() > 0) features = std::max<std::size_t>(features, c[c.size() - 1] + 1);
  }
  if (features <= 64) return run_verify<1>(cliques, size2, counts, config, pruning, options);
  if (features <= 256) return run_verify<4>(cliques, size2, counts, config, pruning, options);
  if (features <= 1024) return run_verify<16>(cliques, size2, counts, config, pruning, options);
  if (features <= 4096) return run_verify<64>(cliques, size2, counts, config, pruning, options);
  throw InvalidConfig("verification supports at most 4096 dynamic features");
}

std::vector<PatternResult> derive_all_prevalent(std::span<const Pattern> maximal,
                                                const Size2Tables& size2,
                                                const FeatureCounts& counts,
                                                const MiningConfig& config, unsigned threads) {
  config.validate();
  std::set<Pattern> members;
  for (const Pattern& top : maximal) {
    const std::size_t m = top.size();
    if (m >= 63) throw ContractViolation("maximal pattern too large to enumerate subsets");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<FeatureId> subset;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::uint64_t{1} << i)) subset.push_back(top[i]);
      }
      members.emplace(std::move(subset));
    }
  }

  const EdgeIndex edges(size2);
  std::vector<Pattern> ordered(members.begin(), members.end());
  std::sort(ordered.begin(), ordered.end(), SizeThenLex{});
  std::vector<PatternResult> results(ordered.size());
  const std::set<Pattern> maximal_set(maximal.begin(), maximal.end());
  parallel_for(ordered.size(), threads, [&](std::size_t i) {
    const Pattern& p = ordered[i];
    const TableInstance* table = nullptr;
    std::optional<TableInstance> assembled;
    if (p.size() == 2) {
      table = edges.get(p[0], p[1]).table;
    } else {
      assembled = assemble(p.features(), edges, 0, nullptr);
      table = &*assembled;
    }
    results[i] = {p, dpi(*table, counts), table->row_count(), maximal_set.contains(p)};
  });
  return results;
}

}  // namespace dyncoloc
