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

#include "dyncoloc/model.hpp"

#include <algorithm>
#include <cmath>

namespace dyncoloc {

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view to_string(Kind kind) noexcept {
  return kind == Kind::New ? "new" : "dead";
}

std::optional<Kind> parse_kind(std::string_view text) noexcept {
  if (text == "new") return Kind::New;
  if (text == "dead") return Kind::Dead;
  return std::nullopt;
}

std::string DynamicFeature::name() const {
  std::string out = base;
  out += '_';
  out += to_string(kind);
  return out;
}

std::optional<DynamicFeature> parse_feature_name(std::string_view text) {
  const auto cut = text.rfind('_');
  if (cut == std::string_view::npos || cut == 0) return std::nullopt;
  const auto kind = parse_kind(text.substr(cut + 1));
  if (!kind) return std::nullopt;
  return DynamicFeature{std::string(text.substr(0, cut)), *kind};
}

FeatureCatalog::FeatureCatalog(std::vector<DynamicFeature> features) : features_(std::move(features)) {
  std::sort(features_.begin(), features_.end());
  features_.erase(std::unique(features_.begin(), features_.end()), features_.end());
}

std::optional<FeatureId> FeatureCatalog::find(const DynamicFeature& feature) const {
  const auto it = std::lower_bound(features_.begin(), features_.end(), feature);
  if (it == features_.end() || *it != feature) return std::nullopt;
  return static_cast<FeatureId>(it - features_.begin());
}

Pattern::Pattern(std::vector<FeatureId> features) : features_(std::move(features)) {
  std::sort(features_.begin(), features_.end());
  if (std::adjacent_find(features_.begin(), features_.end()) != features_.end()) {
    throw ContractViolation("pattern contains a repeated feature");
  }
  if (features_.size() < 2) throw ContractViolation("pattern needs at least two features");
}

Pattern::Pattern(std::initializer_list<FeatureId> features)
    : Pattern(std::vector<FeatureId>(features)) {}

bool Pattern::contains(FeatureId feature) const noexcept {
  return std::binary_search(features_.begin(), features_.end(), feature);
}

std::optional<std::size_t> Pattern::position_of(FeatureId feature) const noexcept {
  const auto it = std::lower_bound(features_.begin(), features_.end(), feature);
  if (it == features_.end() || *it != feature) return std::nullopt;
  return static_cast<std::size_t>(it - features_.begin());
}

bool Pattern::is_subset_of(const Pattern& other) const noexcept {
  return size() <= other.size() &&
         std::includes(other.features_.begin(), other.features_.end(), features_.begin(),
                       features_.end());
}

Pattern Pattern::without_position(std::size_t i) const {
  if (size() < 3) throw ContractViolation("cannot shrink a size-2 pattern");
  std::vector<FeatureId> rest;
  rest.reserve(size() - 1);
  for (std::size_t j = 0; j < size(); ++j) {
    if (j != i) rest.push_back(features_[j]);
  }
  return Pattern(std::move(rest));
}

std::string format_pattern(const Pattern& pattern, const FeatureCatalog& catalog) {
  std::string out;
  for (const FeatureId f : pattern) {
    if (!out.empty()) out += ',';
    out += f < catalog.size() ? catalog.name(f) : "#" + std::to_string(f);
  }
  return out;
}

std::vector<FeatureId> intersect(const Pattern& a, const Pattern& b) {
  std::vector<FeatureId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string_view to_string(Comparison mode) noexcept {
  return mode == Comparison::Inclusive ? "inclusive" : "strict";
}

std::optional<Comparison> parse_comparison(std::string_view text) noexcept {
  if (text == "inclusive") return Comparison::Inclusive;
  if (text == "strict") return Comparison::Strict;
  return std::nullopt;
}

void MiningConfig::validate() const {
  if (!(distance_threshold > 0.0) || !std::isfinite(distance_threshold)) {
    throw InvalidConfig("distance threshold must be positive");
  }
  if (!(time_span > 0.0) || !std::isfinite(time_span)) {
    throw InvalidConfig("time span must be positive");
  }
  if (!(min_prevalence >= 0.0 && min_prevalence <= 1.0)) {
    throw InvalidConfig("min_prev must lie in [0, 1]");
  }
}

bool passes_prevalence(double ratio, const MiningConfig& config) noexcept {
  return config.prevalence == Comparison::Inclusive ? ratio >= config.min_prevalence
                                                    : ratio > config.min_prevalence;
}

std::uint32_t span_constraint(Kind kind, double life_cycle, double time_span) {
  if (!(life_cycle > 0.0) || !std::isfinite(life_cycle)) {
    throw InvalidConfig("life cycle must be positive");
  }
  if (!(time_span > 0.0) || !std::isfinite(time_span)) {
    throw InvalidConfig("time span must be positive");
  }
  if (kind == Kind::Dead) return 1;
  double spans = life_cycle / time_span;
  // Snap quotients like 1.1 / 0.1 = 11.000000000000002 back onto the integer.
  const double nearest = std::round(spans);
  if (std::abs(spans - nearest) <= 1e-9 * std::max(1.0, nearest)) spans = nearest;
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(spans)));
}

SpanTable SpanTable::build(const FeatureCatalog& catalog, const LifeCycles& life_cycles,
                           double time_span) {
  std::vector<std::uint32_t> spans;
  spans.reserve(catalog.size());
  for (const DynamicFeature& feature : catalog.features()) {
    const auto it = life_cycles.find(feature.base);
    if (it == life_cycles.end()) {
      throw InvalidConfig("no life cycle for base feature '" + feature.base + "'");
    }
    spans.push_back(span_constraint(feature.kind, it->second, time_span));
  }
  return SpanTable(std::move(spans));
}

std::uint32_t SpanTable::max_span() const noexcept {
  return spans_.empty() ? 0 : *std::max_element(spans_.begin(), spans_.end());
}

}  // namespace dyncoloc
