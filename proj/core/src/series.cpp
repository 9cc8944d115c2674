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

#include "dyncoloc/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dyncoloc {

IndexedSeries IndexedSeries::from(const DynamicDatasetSeries& series) {
  IndexedSeries out;
  out.window_count_ = series.window_count();

  std::vector<DynamicFeature> features;
  for (const auto& window : series.windows) {
    for (const DynamicInstance& instance : window) features.push_back(instance.feature);
  }
  out.catalog_ = FeatureCatalog(std::move(features));

  out.instances_.reserve(series.instance_count());
  for (std::size_t k = 0; k < series.windows.size(); ++k) {
    for (const DynamicInstance& instance : series.windows[k]) {
      if (instance.t_index != k) {
        throw FormatError("instance " + instance.feature.name() + "." +
                          std::to_string(instance.ordinal) + " has t_index " +
                          std::to_string(instance.t_index) + " but sits in window " +
                          std::to_string(k));
      }
      out.instances_.push_back(
          {*out.catalog_.find(instance.feature), instance.ordinal, instance.position, instance.t_index});
    }
  }
  std::sort(out.instances_.begin(), out.instances_.end(),
            [](const IndexedInstance& a, const IndexedInstance& b) {
              return std::tie(a.feature, a.ordinal) < std::tie(b.feature, b.ordinal);
            });
  const auto dup = std::adjacent_find(out.instances_.begin(), out.instances_.end(),
                                      [](const IndexedInstance& a, const IndexedInstance& b) {
                                        return a.feature == b.feature && a.ordinal == b.ordinal;
                                      });
  if (dup != out.instances_.end()) {
    throw FormatError("duplicate dynamic instance " + out.catalog_.name(dup->feature) + "." +
                      std::to_string(dup->ordinal));
  }

  out.offsets_.assign(out.catalog_.size() + 1, 0);
  std::vector<std::size_t> counts(out.catalog_.size(), 0);
  for (const IndexedInstance& instance : out.instances_) ++counts[instance.feature];
  for (std::size_t f = 0; f < counts.size(); ++f) {
    out.offsets_[f + 1] = out.offsets_[f] + static_cast<InstanceId>(counts[f]);
  }
  out.counts_ = FeatureCounts(std::move(counts));
  return out;
}

std::span<const IndexedInstance> IndexedSeries::instances_of(FeatureId feature) const {
  const std::span<const IndexedInstance> all = instances_;
  return all.subspan(offsets_.at(feature), offsets_.at(feature + 1) - offsets_.at(feature));
}

std::string IndexedSeries::label(InstanceId id) const {
  const IndexedInstance& instance = instances_.at(id);
  return catalog_.name(instance.feature) + "." + std::to_string(instance.ordinal);
}

InstanceId IndexedSeries::find(const DynamicFeature& feature, std::uint32_t ordinal) const {
  const auto f = catalog_.find(feature);
  if (!f) throw std::out_of_range("unknown feature " + feature.name());
  const auto range = instances_of(*f);
  const auto it = std::find_if(range.begin(), range.end(),
                               [&](const IndexedInstance& i) { return i.ordinal == ordinal; });
  if (it == range.end()) {
    throw std::out_of_range("no instance " + feature.name() + "." + std::to_string(ordinal));
  }
  return static_cast<InstanceId>(offsets_[*f] + (it - range.begin()));
}

DynamicDatasetSeries IndexedSeries::to_series() const {
  DynamicDatasetSeries series;
  series.windows.resize(window_count_);
  for (const IndexedInstance& instance : instances_) {
    series.windows.at(instance.t_index)
        .push_back({catalog_[instance.feature], instance.ordinal, instance.position, instance.t_index});
  }
  for (auto& window : series.windows) {
    std::sort(window.begin(), window.end(), [](const DynamicInstance& a, const DynamicInstance& b) {
      return std::tie(a.feature, a.ordinal) < std::tie(b.feature, b.ordinal);
    });
  }
  return series;
}

}  // namespace dyncoloc
