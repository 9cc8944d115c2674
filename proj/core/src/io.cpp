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

#include "dyncoloc/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

namespace dyncoloc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto at = line.find(sep);
    fields.push_back(trim(line.substr(0, at)));
    if (at == std::string_view::npos) break;
    line.remove_prefix(at + 1);
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view text, std::string_view what, std::size_t line) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw FormatError("invalid " + std::string(what) + " '" + std::string(text) + "'", line);
  }
  return value;
}

// Line reader that skips blank lines and `#` comments, except that it
// hands comment lines to `on_comment` when given.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  template <typename OnComment>
  bool next(std::string_view& out, OnComment&& on_comment) {
    while (std::getline(in_, buffer_)) {
      ++number_;
      const std::string_view text = trim(buffer_);
      if (text.empty()) continue;
      if (text.front() == '#') {
        on_comment(text);
        continue;
      }
      out = text;
      return true;
    }
    return false;
  }
  bool next(std::string_view& out) {
    return next(out, [](std::string_view) {});
  }
  std::size_t line() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t number_ = 0;
};

void expect_header(LineReader& reader, std::string_view header) {
  std::string_view text;
  if (!reader.next(text) || text != header) {
    throw FormatError("missing header (expected '" + std::string(header) + "')",
                      std::max<std::size_t>(reader.line(), 1));
  }
}

void check_fields(const std::vector<std::string_view>& fields, std::size_t expected,
                  std::size_t line) {
  if (fields.size() != expected) {
    throw FormatError("expected " + std::to_string(expected) + " fields, found " +
                          std::to_string(fields.size()),
                      line);
  }
}

double parse_coordinate(std::string_view text, std::string_view what, std::size_t line) {
  const double v = parse_field<double>(text, what, line);
  if (!std::isfinite(v)) throw FormatError("non-finite " + std::string(what), line);
  return v;
}

constexpr std::string_view kSnapshotHeader = "t_point,feature,instance_id,x,y";
constexpr std::string_view kSeriesHeader = "t_index,feature,kind,ordinal,x,y";
constexpr std::string_view kLifeCycleHeader = "feature,life_cycle";
constexpr std::string_view kReportHeader = "pattern;size;dpi;rows;maximal";
constexpr std::string_view kPairsHeader = "feature_a,ordinal_a,t_a,feature_b,ordinal_b,t_b,distance";

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buffer.data(), end);
}

std::vector<Snapshot> read_snapshots(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kSnapshotHeader);
  std::map<std::uint32_t, Snapshot> by_time;
  std::string_view text;
  while (reader.next(text)) {
    const auto fields = split(text, ',');
    check_fields(fields, 5, reader.line());
    const auto t = parse_field<std::uint32_t>(fields[0], "t_point", reader.line());
    if (fields[1].empty()) throw FormatError("empty feature", reader.line());
    SnapshotRecord record{std::string(fields[1]),
                          parse_field<std::uint64_t>(fields[2], "instance_id", reader.line()),
                          {parse_coordinate(fields[3], "x", reader.line()),
                           parse_coordinate(fields[4], "y", reader.line())}};
    Snapshot& snapshot = by_time[t];
    snapshot.t_point = t;
    snapshot.records.push_back(std::move(record));
  }
  std::vector<Snapshot> out;
  out.reserve(by_time.size());
  for (auto& [t, snapshot] : by_time) out.push_back(std::move(snapshot));
  return out;
}

void write_snapshots(std::ostream& out, const std::vector<Snapshot>& snapshots) {
  out << kSnapshotHeader << '\n';
  for (const Snapshot& s : snapshots) {
    for (const SnapshotRecord& r : s.records) {
      out << s.t_point << ',' << r.feature << ',' << r.instance_id << ','
          << format_double(r.position.x) << ',' << format_double(r.position.y) << '\n';
    }
  }
}

DynamicDatasetSeries read_series(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kSeriesHeader);
  DynamicDatasetSeries series;
  std::size_t declared = 0;
  auto on_comment = [&](std::string_view comment) {
    constexpr std::string_view tag = "# windows:";
    if (comment.starts_with(tag)) {
      declared = parse_field<std::size_t>(trim(comment.substr(tag.size())), "window count",
                                          reader.line());
    }
  };
  std::string_view text;
  while (reader.next(text, on_comment)) {
    const auto fields = split(text, ',');
    check_fields(fields, 6, reader.line());
    const auto t = parse_field<std::uint32_t>(fields[0], "t_index", reader.line());
    const auto kind = parse_kind(fields[2]);
    if (!kind) throw FormatError("invalid kind '" + std::string(fields[2]) + "'", reader.line());
    if (fields[1].empty()) throw FormatError("empty feature", reader.line());
    DynamicInstance instance{{std::string(fields[1]), *kind},
                             parse_field<std::uint32_t>(fields[3], "ordinal", reader.line()),
                             {parse_coordinate(fields[4], "x", reader.line()),
                              parse_coordinate(fields[5], "y", reader.line())},
                             t};
    if (series.windows.size() <= t) series.windows.resize(t + 1);
    series.windows[t].push_back(std::move(instance));
  }
  if (declared < series.windows.size() && declared != 0) {
    throw FormatError("instance beyond the declared window count", 0);
  }
  series.windows.resize(std::max(declared, series.windows.size()));
  return series;
}

void write_series(std::ostream& out, const DynamicDatasetSeries& series) {
  out << kSeriesHeader << '\n';
  out << "# windows: " << series.window_count() << '\n';
  for (std::size_t k = 0; k < series.windows.size(); ++k) {
    for (const DynamicInstance& d : series.windows[k]) {
      out << k << ',' << d.feature.base << ',' << to_string(d.feature.kind) << ',' << d.ordinal
          << ',' << format_double(d.position.x) << ',' << format_double(d.position.y) << '\n';
    }
  }
}

LifeCycles read_life_cycles(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kLifeCycleHeader);
  LifeCycles cycles;
  std::string_view text;
  while (reader.next(text)) {
    const auto fields = split(text, ',');
    check_fields(fields, 2, reader.line());
    if (fields[0].empty()) throw FormatError("empty feature", reader.line());
    const double value = parse_field<double>(fields[1], "life_cycle", reader.line());
    if (!(value > 0) || !std::isfinite(value)) {
      throw FormatError("life_cycle must be positive", reader.line());
    }
    if (!cycles.emplace(std::string(fields[0]), value).second) {
      throw FormatError("duplicate feature '" + std::string(fields[0]) + "'", reader.line());
    }
  }
  return cycles;
}

void write_life_cycles(std::ostream& out, const LifeCycles& life_cycles) {
  out << kLifeCycleHeader << '\n';
  for (const auto& [feature, value] : life_cycles) out << feature << ',' << format_double(value) << '\n';
}

void write_pattern_report(std::ostream& out, const std::vector<PatternResult>& patterns,
                          const FeatureCatalog& catalog,
                          const std::vector<std::pair<std::string, std::string>>& header) {
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << '\n';
  out << kReportHeader << '\n';
  std::vector<const PatternResult*> ordered;
  ordered.reserve(patterns.size());
  for (const PatternResult& p : patterns) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(), [](const PatternResult* a, const PatternResult* b) {
    return SizeThenLex{}(a->pattern, b->pattern);
  });
  for (const PatternResult* p : ordered) {
    out << format_pattern(p->pattern, catalog) << ';' << p->pattern.size() << ';'
        << format_double(p->dpi) << ';' << p->row_count << ';' << (p->maximal ? "yes" : "no")
        << '\n';
  }
}

std::vector<ReportRow> read_pattern_report(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kReportHeader);
  std::vector<ReportRow> rows;
  std::string_view text;
  while (reader.next(text)) {
    const auto fields = split(text, ';');
    check_fields(fields, 5, reader.line());
    ReportRow row;
    for (const auto name : split(fields[0], ',')) row.features.emplace_back(name);
    if (parse_field<std::size_t>(fields[1], "size", reader.line()) != row.features.size()) {
      throw FormatError("size does not match the pattern", reader.line());
    }
    row.dpi = parse_field<double>(fields[2], "dpi", reader.line());
    row.rows = parse_field<std::size_t>(fields[3], "rows", reader.line());
    if (fields[4] != "yes" && fields[4] != "no") throw FormatError("invalid maximal flag", reader.line());
    row.maximal = fields[4] == "yes";
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_neighbor_pairs(std::ostream& out, const std::vector<NeighborPair>& pairs,
                          const IndexedSeries& series) {
  out << kPairsHeader << '\n';
  const FeatureCatalog& catalog = series.catalog();
  for (const NeighborPair& p : pairs) {
    const IndexedInstance& a = series[p.first];
    const IndexedInstance& b = series[p.second];
    out << catalog.name(a.feature) << ',' << a.ordinal << ',' << a.t_index << ','
        << catalog.name(b.feature) << ',' << b.ordinal << ',' << b.t_index << ','
        << format_double(distance(a.position, b.position)) << '\n';
  }
}

void write_gen_report(std::ostream& out, const GenReport& report, const GenConfig& config) {
  out << "seed: " << config.seed << '\n'
      << "time_points: " << config.n_time_points << '\n'
      << "dynamic_instances: " << report.total_events() << '\n'
      << "planted_events: " << report.planted_events << '\n'
      << "noise_events: " << report.noise_events << '\n'
      << "static_instances: " << report.static_instances << '\n';
  for (std::size_t c = 0; c < report.clusters.size(); ++c) {
    const PlantedCluster& cluster = report.clusters[c];
    out << "cluster " << c << ": ";
    for (std::size_t i = 0; i < cluster.features.size(); ++i) {
      out << (i == 0 ? "" : ",") << cluster.features[i].name();
    }
    out << " sites=" << cluster.sites << " events=" << cluster.events << '\n';
  }
  for (const auto& [feature, counts] : report.events_per_window) {
    out << "events " << feature << ':';
    for (const auto n : counts) out << ' ' << n;
    out << '\n';
  }
}

SweepSpec read_sweep_spec(std::istream& in) {
  LineReader reader(in);
  SweepSpec spec;
  std::string_view text;
  while (reader.next(text)) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw FormatError("expected key = values", reader.line());
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) throw FormatError("empty key", reader.line());
    std::vector<std::string> values;
    for (const auto v : split(text.substr(eq + 1), ',')) {
      if (v.empty()) throw FormatError("empty value for '" + std::string(key) + "'", reader.line());
      values.emplace_back(v);
    }
    spec.emplace_back(std::string(key), std::move(values));
  }
  return spec;
}

void RunManifest::set(std::string key, std::string value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void RunManifest::write_atomically(const std::filesystem::path& path) const {
  std::ostringstream text;
  for (const auto& [key, value] : entries_) text << key << ": " << value << '\n';
  write_file_atomically(path, text.str());
}

void write_file_atomically(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename into " + path.string());
  }
}

}  // namespace dyncoloc
