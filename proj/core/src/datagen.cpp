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

#include "dyncoloc/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <tuple>

namespace dyncoloc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidConfig("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

double snap(double v) { return std::round(v * 1000.0) / 1000.0; }

struct Event {
  std::uint32_t base = 0;
  Kind kind = Kind::New;
  Point position;
  std::uint32_t window = 0;
};

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ContractViolation("Rng::below needs n > 0");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

void GenConfig::validate() const {
  if (!(width > 0) || !(height > 0)) throw InvalidConfig("area must be positive");
  if (n_time_points < 2) throw InvalidConfig("need at least 2 time points");
  if (!(time_span > 0)) throw InvalidConfig("time_span must be positive");
  if (n_base_features == 0) throw InvalidConfig("need at least one base feature");
  if (life_cycles.size() != n_base_features) {
    throw InvalidConfig("life_cycles has " + std::to_string(life_cycles.size()) +
                        " entries for " + std::to_string(n_base_features) + " base features");
  }
  for (const double lc : life_cycles) {
    if (!(lc > 0)) throw InvalidConfig("life cycles must be positive");
  }
  if (!(cluster_radius > 0) || cluster_radius > std::min(width, height) / 2) {
    throw InvalidConfig("cluster_radius must be in (0, min(width, height) / 2]");
  }
  if (!(churn_ratio >= 0 && churn_ratio <= 1)) throw InvalidConfig("churn_ratio must be in [0, 1]");
  if (min_pattern_size < 2 || min_pattern_size > max_pattern_size) {
    throw InvalidConfig("pattern sizes need 2 <= min_pattern_size <= max_pattern_size");
  }
  if (min_pattern_size > 2 * n_base_features) {
    throw InvalidConfig("min_pattern_size exceeds the number of dynamic features");
  }
  const auto planted = static_cast<std::uint64_t>(
      std::llround(churn_ratio * static_cast<double>(n_dynamic_instances)));
  if (planted > 0) {
    if (cluster_count == 0) throw InvalidConfig("churn_ratio > 0 needs cluster_count > 0");
    if (std::uint64_t{cluster_count} * min_pattern_size > planted) {
      throw InvalidConfig("planted clusters need more events than the instance budget allows");
    }
  }
}

void GenConfig::set(std::string_view key, std::string_view value) {
  if (key == "width") width = parse_number<double>(key, value);
  else if (key == "height") height = parse_number<double>(key, value);
  else if (key == "n_time_points") n_time_points = parse_number<std::uint32_t>(key, value);
  else if (key == "time_span") time_span = parse_number<double>(key, value);
  else if (key == "n_base_features") n_base_features = parse_number<std::uint32_t>(key, value);
  else if (key == "n_dynamic_instances") n_dynamic_instances = parse_number<std::uint64_t>(key, value);
  else if (key == "cluster_count") cluster_count = parse_number<std::uint32_t>(key, value);
  else if (key == "cluster_radius") cluster_radius = parse_number<double>(key, value);
  else if (key == "churn_ratio") churn_ratio = parse_number<double>(key, value);
  else if (key == "min_pattern_size") min_pattern_size = parse_number<std::uint32_t>(key, value);
  else if (key == "max_pattern_size") max_pattern_size = parse_number<std::uint32_t>(key, value);
  else if (key == "static_instances") static_instances = parse_number<std::uint64_t>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "life_cycles") {
    life_cycles.clear();
    std::string_view rest = value;
    while (true) {
      const auto comma = rest.find(',');
      life_cycles.push_back(parse_number<double>(key, rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else {
    throw InvalidConfig("unknown generator key '" + std::string(key) + "'");
  }
}

GenConfig parse_gen_config(std::istream& in) {
  GenConfig config;
  bool cycles_given = false;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw FormatError("expected key = value", number);
    const auto key = trim(text.substr(0, eq));
    try {
      config.set(key, trim(text.substr(eq + 1)));
    } catch (const InvalidConfig& e) {
      throw FormatError(e.what(), number);
    }
    cycles_given = cycles_given || key == "life_cycles";
  }
  if (!cycles_given) config.life_cycles = default_life_cycles(config.n_base_features);
  return config;
}

std::vector<double> default_life_cycles(std::uint32_t n) {
  static constexpr double kCycles[] = {9, 3, 30, 15, 27, 24, 30, 3, 24, 18};
  std::vector<double> out(n);
  for (std::uint32_t i = 0; i < n; ++i) out[i] = kCycles[i % std::size(kCycles)];
  return out;
}

std::string base_feature_name(std::uint32_t index) {
  std::string name;
  std::uint64_t n = std::uint64_t{index} + 1;
  while (n > 0) {
    --n;
    name.insert(name.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return name;
}

GenOutput generate(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::uint32_t windows = config.n_time_points - 1;
  const std::uint32_t dynamic_features = 2 * config.n_base_features;
  const std::uint32_t max_size = std::min(config.max_pattern_size, dynamic_features);

  auto feature_of = [&](std::uint32_t dyn) {
    return DynamicFeature{base_feature_name(dyn / 2), dyn % 2 == 0 ? Kind::New : Kind::Dead};
  };

  GenOutput out;
  GenReport& report = out.report;
  for (std::uint32_t f = 0; f < dynamic_features; ++f) {
    report.events_per_window[feature_of(f).name()].assign(windows, 0);
  }

  // Planted patterns: a random subset of dynamic feature indices each.
  std::vector<std::vector<std::uint32_t>> patterns(config.cluster_count);
  for (auto& pattern : patterns) {
    const auto size = config.min_pattern_size +
                      static_cast<std::uint32_t>(rng.below(max_size - config.min_pattern_size + 1));
    std::vector<std::uint32_t> pool(dynamic_features);
    for (std::uint32_t i = 0; i < dynamic_features; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < size; ++i) {
      std::swap(pool[i], pool[i + rng.below(dynamic_features - i)]);
    }
    pattern.assign(pool.begin(), pool.begin() + size);
    std::sort(pattern.begin(), pattern.end());
    PlantedCluster cluster;
    for (const auto f : pattern) cluster.features.push_back(feature_of(f));
    std::sort(cluster.features.begin(), cluster.features.end());
    report.clusters.push_back(std::move(cluster));
  }

  std::vector<Event> events;
  events.reserve(config.n_dynamic_instances);
  auto push_event = [&](std::uint32_t dyn, Point p, std::uint32_t window) {
    events.push_back({dyn / 2, dyn % 2 == 0 ? Kind::New : Kind::Dead, {snap(p.x), snap(p.y)}, window});
    ++report.events_per_window[feature_of(dyn).name()][window];
  };

  const auto planted_budget = static_cast<std::uint64_t>(
      std::llround(config.churn_ratio * static_cast<double>(config.n_dynamic_instances)));
  const double r = config.cluster_radius;
  std::uint64_t planted = 0;
  for (std::size_t c = 0; config.cluster_count > 0; c = (c + 1) % patterns.size()) {
    const auto& pattern = patterns[c];
    if (planted + pattern.size() > planted_budget) break;
    const Point centre{rng.uniform(r, config.width - r), rng.uniform(r, config.height - r)};
    const auto window = static_cast<std::uint32_t>(rng.below(windows));
    for (const auto f : pattern) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double radius = r * std::sqrt(rng.unit());
      const std::uint32_t w = window + 1 < windows && rng.below(2) == 1 ? window + 1 : window;
      push_event(f, {centre.x + radius * std::cos(angle), centre.y + radius * std::sin(angle)}, w);
    }
    planted += pattern.size();
    report.clusters[c].sites += 1;
    report.clusters[c].events += pattern.size();
  }
  report.planted_events = planted;

  while (events.size() < config.n_dynamic_instances) {
    const auto dyn = static_cast<std::uint32_t>(rng.below(dynamic_features));
    const Point p{rng.uniform(0.0, config.width), rng.uniform(0.0, config.height)};
    push_event(dyn, p, static_cast<std::uint32_t>(rng.below(windows)));
    ++report.noise_events;
  }

  // Materialize objects. Instance ids count up per base feature.
  out.snapshots.resize(config.n_time_points);
  for (std::uint32_t t = 0; t < config.n_time_points; ++t) out.snapshots[t].t_point = t;
  std::vector<std::uint64_t> next_id(config.n_base_features, 1);
  auto place = [&](std::uint32_t base, Point p, std::uint32_t from, std::uint32_t to) {
    const std::uint64_t id = next_id[base]++;
    const std::string name = base_feature_name(base);
    for (std::uint32_t t = from; t <= to; ++t) out.snapshots[t].records.push_back({name, id, p});
  };
  for (std::uint64_t i = 0; i < config.static_instances; ++i) {
    const auto base = static_cast<std::uint32_t>(rng.below(config.n_base_features));
    const Point p{snap(rng.uniform(0.0, config.width)), snap(rng.uniform(0.0, config.height))};
    place(base, p, 0, windows);
  }
  report.static_instances = config.static_instances;
  for (const Event& e : events) {
    if (e.kind == Kind::New) place(e.base, e.position, e.window + 1, windows);
    else place(e.base, e.position, 0, e.window);
  }
  for (Snapshot& s : out.snapshots) {
    std::sort(s.records.begin(), s.records.end(), [](const auto& a, const auto& b) {
      return std::tie(a.feature, a.instance_id) < std::tie(b.feature, b.instance_id);
    });
  }

  // Only base features that occur, so the file matches the data exactly.
  for (std::uint32_t b = 0; b < config.n_base_features; ++b) {
    if (next_id[b] > 1) out.life_cycles.emplace(base_feature_name(b), config.life_cycles[b]);
  }
  return out;
}

}  // namespace dyncoloc
