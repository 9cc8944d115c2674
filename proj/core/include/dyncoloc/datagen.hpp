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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/snapshot.hpp"

// Seeded synthetic workload generator.
//
// Model: `cluster_count` planted patterns, each a random set of dynamic
// features. A fraction `churn_ratio` of the dynamic events is emitted at
// planted sites: a site has a centre and a window w, with one event per pattern
// feature placed within `cluster_radius` of the centre in window w or w+1.
// The remaining events are uniform noise over the whole domain.
// A new event in window k is an object that appears at time point k+1 and
// stays; a dead event in window k is an object present from time point 0
// through k. `static_instances` objects never change. Diffing the output
// therefore yields exactly `n_dynamic_instances` dynamic instances.

namespace dyncoloc {

/// Portable uniform draws on top of std::mt19937_64, whose output sequence
/// is fixed by the standard. The std distributions are not portable, so
/// the conversions are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

struct GenConfig {
  double width = 1000.0;
  double height = 1000.0;
  std::uint32_t n_time_points = 11;
  double time_span = 3.0;
  std::uint32_t n_base_features = 10;
  std::vector<double> life_cycles{9, 3, 30, 15, 27, 24, 30, 3, 24, 18};
  std::uint64_t n_dynamic_instances = 10000;
  std::uint32_t cluster_count = 12;
  double cluster_radius = 17.0;
  double churn_ratio = 0.6;
  std::uint32_t min_pattern_size = 3;   ///< features per planted pattern, lower bound
  std::uint32_t max_pattern_size = 6;   ///< upper bound, clamped to 2 * n_base_features
  std::uint64_t static_instances = 500;
  std::uint64_t seed = 1;

  /// Throws InvalidConfig on out-of-range or infeasible settings.
  void validate() const;

  /// Applies one `key = value` setting; throws InvalidConfig on an unknown
  /// key or a bad value. Keys match the field names.
  void set(std::string_view key, std::string_view value);
};

/// Parses a `key = value` file (blank lines and `#` comments ignored).
/// Throws FormatError with the line number on syntax errors.
GenConfig parse_gen_config(std::istream& in);

/// The default life-cycle list repeated to cover `n` base features.
std::vector<double> default_life_cycles(std::uint32_t n);

/// Spreadsheet-style base feature names: A..Z, AA, AB, ...
std::string base_feature_name(std::uint32_t index);

struct PlantedCluster {
  std::vector<DynamicFeature> features;  ///< canonical order
  std::uint64_t sites = 0;
  std::uint64_t events = 0;
};

struct GenReport {
  /// Per dynamic feature name: new/dead event count per window.
  std::map<std::string, std::vector<std::uint64_t>> events_per_window;
  std::vector<PlantedCluster> clusters;
  std::uint64_t planted_events = 0;
  std::uint64_t noise_events = 0;
  std::uint64_t static_instances = 0;

  std::uint64_t total_events() const noexcept { return planted_events + noise_events; }
};

struct GenOutput {
  std::vector<Snapshot> snapshots;
  GenReport report;
  LifeCycles life_cycles;
};

/// Deterministic in the whole config including `seed`.
GenOutput generate(const GenConfig& config);

}  // namespace dyncoloc
