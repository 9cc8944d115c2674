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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dyncoloc {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value is out of range.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Not enough input to do anything meaningful (e.g. a single snapshot).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

enum class Kind : std::uint8_t { New = 0, Dead = 1 };

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> parse_kind(std::string_view text) noexcept;

/// A base feature tagged as appearing (new) or disappearing (dead).
///
/// Ordering is the canonical feature order used everywhere in output:
/// lexicographic by base id, then new before dead.
struct DynamicFeature {
  std::string base;
  Kind kind = Kind::New;

  std::string name() const;  // e.g. "A_new"
  auto operator<=>(const DynamicFeature&) const = default;
};

/// Parses "A_new" / "A_dead". The base id is everything before the last '_'.
std::optional<DynamicFeature> parse_feature_name(std::string_view text);

/// Dense index of a dynamic feature inside a FeatureCatalog. Ids follow the
/// canonical feature order, so sorting ids sorts features canonically.
using FeatureId = std::uint32_t;

/// Index of a dynamic instance inside an IndexedSeries.
using InstanceId = std::uint32_t;

/// Sorted, duplicate-free dictionary of the dynamic features of a dataset.
class FeatureCatalog {
 public:
  FeatureCatalog() = default;
  explicit FeatureCatalog(std::vector<DynamicFeature> features);

  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }
  const DynamicFeature& operator[](FeatureId id) const { return features_.at(id); }
  std::span<const DynamicFeature> features() const noexcept { return features_; }

  std::optional<FeatureId> find(const DynamicFeature& feature) const;
  std::string name(FeatureId id) const { return features_.at(id).name(); }

 private:
  std::vector<DynamicFeature> features_;
};

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// A set of at least two distinct dynamic features, kept sorted so that
/// equality and ordering are structural.
class Pattern {
 public:
  Pattern() = default;
  /// Sorts `features`; throws ContractViolation on duplicates or size < 2.
  explicit Pattern(std::vector<FeatureId> features);
  Pattern(std::initializer_list<FeatureId> features);

  std::size_t size() const noexcept { return features_.size(); }
  std::span<const FeatureId> features() const noexcept { return features_; }
  FeatureId operator[](std::size_t i) const { return features_[i]; }
  auto begin() const noexcept { return features_.begin(); }
  auto end() const noexcept { return features_.end(); }

  bool contains(FeatureId feature) const noexcept;
  /// Position of `feature` in the sorted feature list.
  std::optional<std::size_t> position_of(FeatureId feature) const noexcept;
  /// Non-strict subset test.
  bool is_subset_of(const Pattern& other) const noexcept;
  bool is_strict_subset_of(const Pattern& other) const noexcept {
    return size() < other.size() && is_subset_of(other);
  }
  /// The size-(k-1) pattern obtained by dropping position `i`; requires size() >= 3.
  Pattern without_position(std::size_t i) const;

  auto operator<=>(const Pattern&) const = default;

 private:
  std::vector<FeatureId> features_;
};

/// Orders by size first, then lexicographically. Used for reports.
struct SizeThenLex {
  bool operator()(const Pattern& a, const Pattern& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// "A_new,B_dead" using the catalog's names.
std::string format_pattern(const Pattern& pattern, const FeatureCatalog& catalog);

/// Intersection of two patterns as a sorted feature list (may be < 2 long).
std::vector<FeatureId> intersect(const Pattern& a, const Pattern& b);

// ---------------------------------------------------------------------------
// Configuration and temporal arithmetic
// ---------------------------------------------------------------------------

enum class Comparison : std::uint8_t { Inclusive, Strict };

std::string_view to_string(Comparison mode) noexcept;
std::optional<Comparison> parse_comparison(std::string_view text) noexcept;

/// Thresholds shared by every miner.
struct MiningConfig {
  double distance_threshold = 35.0;   ///< D_d, same units as coordinates.
  double min_prevalence = 0.1;        ///< min_prev in [0, 1].
  double time_span = 3.0;             ///< Duration between consecutive snapshots.
  Comparison prevalence = Comparison::Inclusive;  ///< DPI >= min_prev, or >.
  Comparison temporal = Comparison::Inclusive;    ///< |dt| <= max span, or <.

  /// Throws InvalidConfig when any field is out of range.
  void validate() const;
};

/// True when `ratio` meets the prevalence threshold under `config`.
bool passes_prevalence(double ratio, const MiningConfig& config) noexcept;

/// Number of transition windows a dynamic feature's influence reaches.
/// Dead features always reach one window; new features reach
/// ceil(life_cycle / time_span), at least one.
std::uint32_t span_constraint(Kind kind, double life_cycle, double time_span);

/// Life cycle per base feature id.
using LifeCycles = std::map<std::string, double, std::less<>>;

/// Span constraint per FeatureId of a catalog.
class SpanTable {
 public:
  SpanTable() = default;
  explicit SpanTable(std::vector<std::uint32_t> spans) : spans_(std::move(spans)) {}

  /// Throws InvalidConfig when a base feature of `catalog` has no life cycle.
  static SpanTable build(const FeatureCatalog& catalog, const LifeCycles& life_cycles,
                         double time_span);

  std::size_t size() const noexcept { return spans_.size(); }
  std::uint32_t operator[](FeatureId id) const { return spans_[id]; }
  std::uint32_t max_span() const noexcept;

 private:
  std::vector<std::uint32_t> spans_;
};

}  // namespace dyncoloc
