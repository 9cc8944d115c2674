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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyncoloc/datagen.hpp"
#include "dyncoloc/model.hpp"
#include "dyncoloc/neighborhood.hpp"
#include "dyncoloc/series.hpp"
#include "dyncoloc/snapshot.hpp"
#include "dyncoloc/verify.hpp"

// Text formats. Every reader requires its header line and reports
// problems as FormatError carrying the 1-based line number.

namespace dyncoloc {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// `t_point,feature,instance_id,x,y`. Snapshots come back sorted by t_point.
std::vector<Snapshot> read_snapshots(std::istream& in);
void write_snapshots(std::ostream& out, const std::vector<Snapshot>& snapshots);

/// `t_index,feature,kind,ordinal,x,y`. The writer adds a `# windows: N`
/// line after the header so trailing empty windows survive a round trip.
DynamicDatasetSeries read_series(std::istream& in);
void write_series(std::ostream& out, const DynamicDatasetSeries& series);

/// `feature,life_cycle`.
LifeCycles read_life_cycles(std::istream& in);
void write_life_cycles(std::ostream& out, const LifeCycles& life_cycles);

/// Optional `# key: value` lines, then `pattern;size;dpi;rows;maximal`
/// rows in SizeThenLex order. Contains nothing run-dependent.
void write_pattern_report(std::ostream& out, const std::vector<PatternResult>& patterns,
                          const FeatureCatalog& catalog,
                          const std::vector<std::pair<std::string, std::string>>& header = {});

/// Reads the rows of a pattern report as (pattern names, dpi, rows, maximal).
struct ReportRow {
  std::vector<std::string> features;
  double dpi = 0.0;
  std::size_t rows = 0;
  bool maximal = false;
};
std::vector<ReportRow> read_pattern_report(std::istream& in);

/// `feature_a,ordinal_a,t_a,feature_b,ordinal_b,t_b,distance`.
void write_neighbor_pairs(std::ostream& out, const std::vector<NeighborPair>& pairs,
                          const IndexedSeries& series);

void write_gen_report(std::ostream& out, const GenReport& report, const GenConfig& config);

/// Sweep spec: `key = v1, v2, ...` lines; blank lines and `#` comments skipped.
using SweepSpec = std::vector<std::pair<std::string, std::vector<std::string>>>;
SweepSpec read_sweep_spec(std::istream& in);

/// Ordered `key: value` lines.
class RunManifest {
 public:
  void set(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }
  /// Writes to a temporary sibling and renames it over `path`.
  void write_atomically(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Writes `text` to a temporary sibling of `path` and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view text);

/// Lowercase hex SHA-256 of a file's bytes. Throws Error when unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace dyncoloc
