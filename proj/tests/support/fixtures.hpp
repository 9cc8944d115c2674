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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncoloc/datagen.hpp"
#include "dyncoloc/model.hpp"
#include "dyncoloc/series.hpp"
#include "dyncoloc/snapshot.hpp"

namespace dyncoloc::test {

inline DynamicInstance dyn(const std::string& base, Kind kind, std::uint32_t ordinal, double x,
                           double y, std::uint32_t window) {
  return {{base, kind}, ordinal, {x, y}, window};
}

/// Hand-built series over four windows. Mining uses d_d 10 with min_prev
/// 0.3. Every base feature has life cycle 9 at time span 3, giving span 3
/// for new features and 1 for dead ones. Geometry:
///
///   C_dead.2 (0,0)  A_dead.1 (5,0)  B_new.1 (8,0)  B_new.2 (14,0)  A_new.1 (22,0)
///   A_new.2 (14,9)  A_dead.2 (8,-9)  B_dead.1 (8,-17)
///   A_new.3 (100,0) + C_new.1 (105,0)   A_new.4 (200,0) + C_new.2 (205,0)
///   C_dead.1 (300,0), isolated
///
/// The neighbor pairs are exactly
///   {A_new.1,B_new.2} {A_new.2,B_new.2}
///   {A_dead.1,B_new.1} {A_dead.1,B_new.2} {A_dead.2,B_new.1}
///   {A_dead.1,C_dead.2} {B_new.1,C_dead.2} {A_dead.2,B_dead.1}
///   {A_new.3,C_new.1} {A_new.4,C_new.2}
/// so the prevalent size-2 patterns are the six pairs of the sample feature
/// graph, with {A_new, C_dead} absent.
inline DynamicDatasetSeries sample_series() {
  DynamicDatasetSeries s;
  s.windows.resize(4);
  auto& w0 = s.windows[0];
  w0.push_back(dyn("A", Kind::New, 1, 22, 0, 0));
  w0.push_back(dyn("A", Kind::New, 2, 14, 9, 0));
  w0.push_back(dyn("A", Kind::Dead, 1, 5, 0, 0));
  w0.push_back(dyn("A", Kind::Dead, 2, 8, -9, 0));
  w0.push_back(dyn("B", Kind::New, 1, 8, 0, 0));
  w0.push_back(dyn("B", Kind::New, 2, 14, 0, 0));
  w0.push_back(dyn("B", Kind::Dead, 1, 8, -17, 0));
  w0.push_back(dyn("C", Kind::Dead, 1, 300, 0, 0));
  w0.push_back(dyn("C", Kind::Dead, 2, 0, 0, 0));
  s.windows[1].push_back(dyn("A", Kind::New, 3, 100, 0, 1));
  s.windows[1].push_back(dyn("C", Kind::New, 1, 105, 0, 1));
  s.windows[3].push_back(dyn("A", Kind::New, 4, 200, 0, 3));
  s.windows[3].push_back(dyn("C", Kind::New, 2, 205, 0, 3));
  return s;
}

inline LifeCycles sample_life_cycles() { return {{"A", 9.0}, {"B", 9.0}, {"C", 9.0}}; }

inline MiningConfig sample_config() {
  MiningConfig c;
  c.distance_threshold = 10.0;
  c.min_prevalence = 0.3;
  c.time_span = 3.0;
  return c;
}

/// Catalog id of "A_new" style names; throws when absent.
inline FeatureId fid(const FeatureCatalog& catalog, const std::string& name) {
  const auto f = parse_feature_name(name);
  if (!f) throw std::invalid_argument("bad feature name " + name);
  const auto id = catalog.find(*f);
  if (!id) throw std::invalid_argument("feature not in catalog: " + name);
  return *id;
}

inline Pattern pat(const FeatureCatalog& catalog, std::initializer_list<const char*> names) {
  std::vector<FeatureId> ids;
  for (const char* n : names) ids.push_back(fid(catalog, n));
  return Pattern(std::move(ids));
}

/// Shape of a random test series.
struct RandomSeriesSpec {
  std::uint32_t max_base_features = 8;
  std::uint32_t max_instances = 150;
  std::uint32_t max_windows = 5;
  double area = 60.0;  ///< square side
};

struct RandomCase {
  DynamicDatasetSeries series;
  LifeCycles life_cycles;
  MiningConfig config;
};

/// Seeded random series. Instances are drawn around a few shared centres so
/// that multi-feature patterns occur, plus uniform noise.
inline RandomCase random_case(std::uint64_t seed, const RandomSeriesSpec& spec = {}) {
  Rng rng(seed);
  RandomCase rc;
  const auto n_bases = static_cast<std::uint32_t>(2 + rng.below(spec.max_base_features - 1));
  const auto n_windows = static_cast<std::uint32_t>(1 + rng.below(spec.max_windows));
  const auto n_instances = static_cast<std::uint32_t>(10 + rng.below(spec.max_instances - 9));
  static const double kCycles[] = {3.0, 6.0, 9.0, 12.0};
  for (std::uint32_t b = 0; b < n_bases; ++b) {
    rc.life_cycles[base_feature_name(b)] = kCycles[rng.below(4)];
  }
  const std::size_t n_centres = 1 + rng.below(4);
  std::vector<Point> centres;
  for (std::size_t i = 0; i < n_centres; ++i) {
    centres.push_back({rng.uniform(0, spec.area), rng.uniform(0, spec.area)});
  }
  rc.series.windows.resize(n_windows);
  std::map<DynamicFeature, std::uint32_t> next_ordinal;
  std::vector<DynamicInstance> all;
  for (std::uint32_t i = 0; i < n_instances; ++i) {
    DynamicFeature f{base_feature_name(static_cast<std::uint32_t>(rng.below(n_bases))),
                     rng.below(2) == 0 ? Kind::New : Kind::Dead};
    Point p;
    if (rng.below(3) != 0) {
      const Point& c = centres[rng.below(centres.size())];
      p = {c.x + rng.uniform(-6, 6), c.y + rng.uniform(-6, 6)};
    } else {
      p = {rng.uniform(0, spec.area), rng.uniform(0, spec.area)};
    }
    all.push_back({f, 0, p, static_cast<std::uint32_t>(rng.below(n_windows))});
  }
  std::stable_sort(all.begin(), all.end(), [](const DynamicInstance& a, const DynamicInstance& b) {
    return a.t_index < b.t_index;
  });
  for (DynamicInstance& d : all) {
    d.ordinal = ++next_ordinal[d.feature];
    rc.series.windows[d.t_index].push_back(d);
  }
  rc.config.distance_threshold = 5.0 + static_cast<double>(rng.below(6));
  rc.config.min_prevalence = 0.1 + 0.05 * static_cast<double>(rng.below(6));
  rc.config.time_span = 3.0;
  return rc;
}

}  // namespace dyncoloc::test
