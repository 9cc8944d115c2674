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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dyncoloc/datagen.hpp"
#include "dyncoloc/oracles.hpp"
#include "dyncoloc/snapshot.hpp"

namespace dyncoloc::cli {
namespace {

namespace fs = std::filesystem;

/// An input problem that maps to exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

/// Rethrows FormatError with the file name prefixed.
template <typename Fn>
auto with_file(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    // The message already carries the line number.
    throw FormatError(path.string() + ": " + e.what());
  }
}

struct LoadedInput {
  DynamicDatasetSeries series;
  std::set<std::string> bases;  ///< every base feature mentioned in the input
};

LoadedInput load_input(const fs::path& path) {
  std::string first;
  {
    std::ifstream probe = open_input(path);
    while (std::getline(probe, first)) {
      while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
      if (!first.empty() && first.front() != '#') break;
    }
  }
  std::ifstream in = open_input(path);
  LoadedInput loaded;
  if (first.starts_with("t_index,")) {
    loaded.series = with_file(path, [&] { return read_series(in); });
    for (const auto& window : loaded.series.windows) {
      for (const DynamicInstance& d : window) loaded.bases.insert(d.feature.base);
    }
  } else {
    const auto snapshots = with_file(path, [&] { return read_snapshots(in); });
    for (const Snapshot& s : snapshots) {
      for (const SnapshotRecord& r : s.records) loaded.bases.insert(r.feature);
    }
    loaded.series = with_file(path, [&] { return diff_snapshots(snapshots); });
  }
  return loaded;
}

std::string join_flags(const PruningFlags& p) {
  if (p.early_abort && p.shared_subpatterns) return "p1,p2";
  if (p.early_abort) return "p1";
  if (p.shared_subpatterns) return "p2";
  return "none";
}

void put_config(RunManifest& m, const MiningConfig& c) {
  m.set("config.dd", format_double(c.distance_threshold));
  m.set("config.min_prev", format_double(c.min_prevalence));
  m.set("config.time_span", format_double(c.time_span));
  m.set("config.temporal", std::string(to_string(c.temporal)));
  m.set("config.prevalence", std::string(to_string(c.prevalence)));
}

void put_timings(RunManifest& m, const std::vector<StageTiming>& timings) {
  double total = 0.0;
  for (const StageTiming& t : timings) {
    m.set("time_ms." + t.stage, format_double(std::max(0.0, t.millis)));
    total += std::max(0.0, t.millis);
  }
  m.set("time_ms.total", format_double(total));
}

fs::path default_manifest(const fs::path& report) {
  fs::path m = report;
  m += ".manifest";
  return m;
}

// ---------------------------------------------------------------------------
// diff
// ---------------------------------------------------------------------------

int cmd_diff(const fs::path& input, const fs::path& output, std::ostream& out) {
  std::ifstream in = open_input(input);
  const auto snapshots = with_file(input, [&] { return read_snapshots(in); });
  const auto series = with_file(input, [&] { return diff_snapshots(snapshots); });
  std::ostringstream text;
  write_series(text, series);
  write_file_atomically(output, text.str());
  std::size_t news = 0, deads = 0;
  for (const auto& window : series.windows) {
    for (const DynamicInstance& d : window) (d.feature.kind == Kind::New ? news : deads) += 1;
  }
  out << "snapshots: " << snapshots.size() << "\nwindows: " << series.window_count()
      << "\ninstances: " << series.instance_count() << "\nnew: " << news << "\ndead: " << deads
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// mine
// ---------------------------------------------------------------------------

struct MineArgs {
  fs::path input;
  fs::path report;
  fs::path manifest;
  fs::path life_cycles;
  fs::path pairs_out;
  MiningConfig config;
  std::string temporal = "inclusive";
  std::string prevalence = "inclusive";
  std::string algo = "mdc";
  bool no_prune1 = false;
  bool no_prune2 = false;
  bool derive_all = false;
  bool seedless_report = false;
  unsigned threads = 1;
};

int cmd_mine(MineArgs a, std::ostream& out) {
  const auto temporal = parse_comparison(a.temporal);
  const auto prevalence = parse_comparison(a.prevalence);
  if (!temporal || !prevalence) throw InvalidConfig("comparison must be inclusive or strict");
  a.config.temporal = *temporal;
  a.config.prevalence = *prevalence;
  a.config.validate();
  if (a.threads == 0) throw InvalidConfig("--threads must be at least 1");

  const LoadedInput loaded = load_input(a.input);
  std::ifstream cycles_in = open_input(a.life_cycles);
  const LifeCycles cycles = with_file(a.life_cycles, [&] { return read_life_cycles(cycles_in); });
  check_life_cycles(cycles, loaded.bases);

  const IndexedSeries series = IndexedSeries::from(loaded.series);
  const SpanTable spans = SpanTable::build(series.catalog(), cycles, a.config.time_span);

  MineOptions options;
  options.config = a.config;
  options.pruning = {!a.no_prune1, !a.no_prune2};
  options.derive_all = a.derive_all;
  options.threads = a.threads;

  MineResult result;
  if (a.algo == "mdc") {
    result = mine_maximal(series, spans, options);
  } else if (a.algo == "join") {
    result = mine_join(series, spans, options);
  } else if (a.algo == "brute") {
    const auto start = std::chrono::steady_clock::now();
    BruteForceResult brute = brute_force_mine(series, spans, a.config);
    result.maximal_count = brute.maximal.size();
    result.prevalent_count = brute.prevalent.size();
    result.patterns = a.derive_all ? std::move(brute.prevalent) : std::move(brute.maximal);
    result.timings.push_back(
        {"brute", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()});
  } else {
    throw InvalidConfig("--algo must be mdc, join or brute");
  }
  // The join and brute miners produce every prevalent pattern; without
  // --derive-all only the maximal ones are reported, as for mdc.
  if (a.algo != "mdc" && !a.derive_all) {
    std::erase_if(result.patterns, [](const PatternResult& r) { return !r.maximal; });
  }

  std::vector<std::pair<std::string, std::string>> header;
  if (!a.seedless_report) {
    header = {{"algo", a.algo},
              {"dd", format_double(a.config.distance_threshold)},
              {"min_prev", format_double(a.config.min_prevalence)},
              {"time_span", format_double(a.config.time_span)},
              {"temporal", std::string(to_string(a.config.temporal))},
              {"prevalence", std::string(to_string(a.config.prevalence))},
              {"patterns", a.derive_all ? "all prevalent" : "maximal"}};
  }
  std::ostringstream report;
  write_pattern_report(report, result.patterns, series.catalog(), header);
  write_file_atomically(a.report, report.str());

  if (!a.pairs_out.empty()) {
    std::ostringstream pairs;
    write_neighbor_pairs(pairs, neighbor_pairs(series, spans, a.config, a.threads), series);
    write_file_atomically(a.pairs_out, pairs.str());
  }

  RunManifest m;
  m.set("command", "mine");
  m.set("algo", a.algo);
  m.set("input", a.input.string());
  m.set("input.sha256", sha256_file(a.input));
  m.set("lifecycles", a.life_cycles.string());
  m.set("lifecycles.sha256", sha256_file(a.life_cycles));
  put_config(m, a.config);
  m.set("pruning", join_flags(options.pruning));
  m.set("derive_all", a.derive_all ? "yes" : "no");
  m.set("threads", std::to_string(a.threads));
  put_timings(m, result.timings);
  m.set("count.instances", std::to_string(series.size()));
  m.set("count.windows", std::to_string(series.window_count()));
  m.set("count.features", std::to_string(series.catalog().size()));
  m.set("count.neighbor_pairs", std::to_string(result.neighbor_pairs));
  m.set("count.prevalent_size2", std::to_string(result.prevalent_size2));
  m.set("count.cliques", std::to_string(result.cliques));
  m.set("count.maximal", std::to_string(result.maximal_count));
  m.set("count.prevalent", std::to_string(result.prevalent_count));
  std::map<std::size_t, std::size_t> by_size;
  for (const PatternResult& r : result.patterns) ++by_size[r.pattern.size()];
  for (const auto& [size, n] : by_size) {
    m.set("count.reported_size_" + std::to_string(size), std::to_string(n));
  }
  if (a.algo == "mdc") {
    const VerifyStats& s = result.verify;
    m.set("prune.candidates_seen", std::to_string(s.candidates_seen));
    m.set("prune.tables_built", std::to_string(s.tables_built));
    m.set("prune.early_aborts", std::to_string(s.early_aborts));
    m.set("prune.shared_verified", std::to_string(s.shared_verified));
    m.set("prune.shared_pruned", std::to_string(s.shared_pruned));
    m.set("prune.decompositions", std::to_string(s.decompositions));
    m.set("prune.subsumed_skips", std::to_string(s.subsumed_skips));
  } else if (a.algo == "join") {
    m.set("join.candidates", std::to_string(result.join.candidates));
    m.set("join.levels", std::to_string(result.join.levels));
  }
  m.write_atomically(a.manifest.empty() ? default_manifest(a.report) : a.manifest);

  out << "instances: " << series.size() << "\nmaximal: " << result.maximal_count
      << "\nprevalent: " << result.prevalent_count << "\nreported: " << result.patterns.size()
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const fs::path& config_path, const std::vector<std::string>& settings,
            std::optional<std::uint64_t> seed, const fs::path& out_dir, std::ostream& out) {
  GenConfig config;
  if (!config_path.empty()) {
    std::ifstream in = open_input(config_path);
    config = with_file(config_path, [&] { return parse_gen_config(in); });
  }
  bool cycles_given = false;
  bool features_given = false;
  for (const std::string& s : settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidConfig("--set expects key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq);
    config.set(key, s.substr(eq + 1));
    cycles_given = cycles_given || key == "life_cycles";
    features_given = features_given || key == "n_base_features";
  }
  if (features_given && !cycles_given) config.life_cycles = default_life_cycles(config.n_base_features);
  if (seed) config.seed = *seed;

  const GenOutput generated = generate(config);
  fs::create_directories(out_dir);
  std::ostringstream snapshots, cycles, report;
  write_snapshots(snapshots, generated.snapshots);
  write_life_cycles(cycles, generated.life_cycles);
  write_gen_report(report, generated.report, config);
  write_file_atomically(out_dir / "snapshots.csv", snapshots.str());
  write_file_atomically(out_dir / "lifecycles.csv", cycles.str());
  write_file_atomically(out_dir / "gen_report.txt", report.str());
  out << "dynamic_instances: " << generated.report.total_events()
      << "\nplanted_events: " << generated.report.planted_events
      << "\nsnapshots: " << generated.snapshots.size() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int cmd_bench(const fs::path& spec_path, const fs::path& out_dir, const BenchOptions& options,
              std::ostream& out) {
  std::ifstream in = open_input(spec_path);
  const SweepSpec spec = with_file(spec_path, [&] { return read_sweep_spec(in); });
  const auto start = std::chrono::steady_clock::now();
  const auto rows = run_sweep(spec, options);
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  fs::create_directories(out_dir);
  std::ostringstream csv;
  write_bench_rows(csv, rows);
  write_file_atomically(out_dir / "bench.csv", csv.str());

  RunManifest m;
  m.set("command", "bench");
  m.set("spec", spec_path.string());
  m.set("spec.sha256", sha256_file(spec_path));
  m.set("threads", std::to_string(options.threads));
  m.set("pruning", join_flags(options.pruning));
  m.set("rows", std::to_string(rows.size()));
  m.set("time_ms.total", format_double(elapsed));
  m.write_atomically(out_dir / "bench.manifest");
  out << "rows: " << rows.size() << '\n';
  return kOk;
}

}  // namespace

std::vector<BenchRow> run_sweep(const SweepSpec& spec, const BenchOptions& options) {
  static const std::set<std::string> kSweepKeys = {"instances", "dd", "min_prev", "features"};
  GenConfig base;
  std::vector<std::string> algos = {"mdc", "join"};
  std::size_t repeat = 1;
  bool cycles_given = false;
  for (const auto& [key, values] : spec) {
    if (kSweepKeys.contains(key)) continue;
    if (key == "algos") {
      algos = values;
      for (const auto& algo : algos) {
        if (algo != "mdc" && algo != "mdc_noprune" && algo != "join") {
          throw InvalidConfig("unknown algo '" + algo + "'");
        }
      }
      continue;
    }
    if (values.size() != 1) throw InvalidConfig("setting '" + key + "' takes one value");
    if (key == "repeat") {
      repeat = std::stoul(values.front());
      if (repeat == 0) throw InvalidConfig("repeat must be at least 1");
      continue;
    }
    std::string joined = values.front();
    base.set(key, joined);
    cycles_given = cycles_given || key == "life_cycles";
  }
  if (!cycles_given) base.life_cycles = default_life_cycles(base.n_base_features);

  auto number = [](const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw InvalidConfig("bad value '" + text + "' for " + key);
    return v;
  };

  std::vector<BenchRow> rows;
  for (const auto& [key, values] : spec) {
    if (!kSweepKeys.contains(key)) continue;
    for (const std::string& value : values) {
      GenConfig gen = base;
      MiningConfig mining;
      mining.time_span = gen.time_span;
      if (key == "instances") {
        gen.n_dynamic_instances = static_cast<std::uint64_t>(number(key, value));
      } else if (key == "features") {
        gen.n_base_features = static_cast<std::uint32_t>(number(key, value));
        if (!cycles_given) gen.life_cycles = default_life_cycles(gen.n_base_features);
      } else if (key == "dd") {
        mining.distance_threshold = number(key, value);
      } else {
        mining.min_prevalence = number(key, value);
      }
      const GenOutput data = generate(gen);
      const IndexedSeries series = IndexedSeries::from(diff_snapshots(data.snapshots));
      const SpanTable spans = SpanTable::build(series.catalog(), data.life_cycles, mining.time_span);

      for (const std::string& algo : algos) {
        MineOptions opts;
        opts.config = mining;
        opts.threads = options.threads;
        opts.pruning = algo == "mdc_noprune" ? PruningFlags::none() : options.pruning;
        BenchRow row{key, value, algo, 0, 0, 0.0};
        for (std::size_t r = 0; r < repeat; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          const MineResult result =
              algo == "join" ? mine_join(series, spans, opts) : mine_maximal(series, spans, opts);
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          row.maximal_count = result.maximal_count;
          row.prevalent_count = result.prevalent_count;
          row.millis = r == 0 ? ms : std::min(row.millis, ms);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_bench_rows(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "param,value,algo,maximal_count,prevalent_count,millis\n";
  for (const BenchRow& r : rows) {
    out << r.param << ',' << r.value << ',' << r.algo << ',' << r.maximal_count << ','
        << r.prevalent_count << ',' << format_double(r.millis) << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal dynamic spatial co-location pattern miner", "dyncoloc"};
  app.require_subcommand(1);

  std::string diff_in, diff_out;
  auto* diff = app.add_subcommand("diff", "Turn snapshots into a dynamic-instance series");
  diff->add_option("input", diff_in, "Snapshot CSV")->required();
  diff->add_option("output", diff_out, "Dynamic-series CSV to write")->required();

  MineArgs mine_args;
  std::string mine_in, mine_out, mine_manifest, mine_cycles, mine_pairs;
  auto* mine = app.add_subcommand("mine", "Mine prevalent maximal patterns");
  mine->add_option("input", mine_in, "Snapshot CSV or dynamic-series CSV")->required();
  mine->add_option("-o,--out", mine_out, "Pattern report to write")->required();
  mine->add_option("--lifecycles", mine_cycles, "feature,life_cycle CSV")->required();
  mine->add_option("--manifest", mine_manifest, "Run manifest path (default: <out>.manifest)");
  mine->add_option("--pairs-out", mine_pairs, "Also dump neighbor pairs as CSV");
  mine->add_option("--dd", mine_args.config.distance_threshold, "Distance threshold")
      ->capture_default_str();
  mine->add_option("--min-prev", mine_args.config.min_prevalence, "Prevalence threshold")
      ->capture_default_str();
  mine->add_option("--time-span", mine_args.config.time_span, "Time between snapshots")
      ->capture_default_str();
  mine->add_option("--temporal", mine_args.temporal, "inclusive|strict")->capture_default_str();
  mine->add_option("--prevalence", mine_args.prevalence, "inclusive|strict")->capture_default_str();
  mine->add_option("--algo", mine_args.algo, "mdc|join|brute")->capture_default_str();
  mine->add_flag("--no-prune1", mine_args.no_prune1, "Disable the early-abort bound");
  mine->add_flag("--no-prune2", mine_args.no_prune2, "Disable shared sub-pattern verification");
  mine->add_flag("--derive-all", mine_args.derive_all, "Report every prevalent pattern");
  mine->add_flag("--seedless-report", mine_args.seedless_report,
                 "Omit the configuration header from the report");
  mine->add_option("--threads", mine_args.threads, "Worker threads")->capture_default_str();

  std::string gen_config, gen_out;
  std::vector<std::string> gen_settings;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic snapshot series");
  gen->add_option("output", gen_out, "Output directory")->required();
  gen->add_option("--config", gen_config, "key = value generator config file");
  gen->add_option("--set", gen_settings, "Generator setting key=value (repeatable)");
  gen->add_option("--seed", gen_seed, "Random seed");
  unsigned gen_threads = 1;
  gen->add_option("--threads", gen_threads, "Accepted for uniformity; generation is serial");

  std::string bench_spec, bench_out;
  BenchOptions bench_options;
  bool bench_no_prune1 = false, bench_no_prune2 = false;
  auto* bench = app.add_subcommand("bench", "Run parameter sweeps and write CSV timings");
  bench->add_option("spec", bench_spec, "Sweep spec file")->required();
  bench->add_option("output", bench_out, "Output directory")->required();
  bench->add_option("--threads", bench_options.threads, "Worker threads")->capture_default_str();
  bench->add_flag("--no-prune1", bench_no_prune1, "Disable the early-abort bound for mdc");
  bench->add_flag("--no-prune2", bench_no_prune2, "Disable shared sub-pattern verification for mdc");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (diff->parsed()) return cmd_diff(diff_in, diff_out, out);
    if (mine->parsed()) {
      mine_args.input = mine_in;
      mine_args.report = mine_out;
      mine_args.manifest = mine_manifest;
      mine_args.life_cycles = mine_cycles;
      mine_args.pairs_out = mine_pairs;
      return cmd_mine(mine_args, out);
    }
    if (gen->parsed()) return cmd_gen(gen_config, gen_settings, gen_seed, gen_out, out);
    if (bench->parsed()) {
      bench_options.pruning = {!bench_no_prune1, !bench_no_prune2};
      if (bench_options.threads == 0) throw InvalidConfig("--threads must be at least 1");
      return cmd_bench(bench_spec, bench_out, bench_options, out);
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace dyncoloc::cli
