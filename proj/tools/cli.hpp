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

#include <iosfwd>
#include <string>
#include <vector>

#include "dyncoloc/io.hpp"
#include "dyncoloc/pipeline.hpp"

namespace dyncoloc::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;     ///< IO and internal errors
inline constexpr int kBadInput = 2;    ///< usage, format and configuration errors

/// Runs the command line `args` (without the program name). Summaries go
/// to `out`, diagnostics to `err`; reports are written to files only.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One row of a benchmark sweep.
struct BenchRow {
  std::string param;
  std::string value;
  std::string algo;
  std::size_t maximal_count = 0;
  std::size_t prevalent_count = 0;
  double millis = 0.0;
};

struct BenchOptions {
  unsigned threads = 1;
  PruningFlags pruning;  ///< applied to the "mdc" algorithm
};

/// Runs every sweep of `spec`. Keys `instances`, `dd`, `min_prev` and
/// `features` are swept one at a time, each over its listed values, with
/// every other parameter at its default. `algos` picks the miners (mdc,
/// mdc_noprune, join; default mdc,join) and `repeat` the number of timed
/// runs per point (the minimum is kept). Any other key is a generator
/// setting applied to every point.
std::vector<BenchRow> run_sweep(const SweepSpec& spec, const BenchOptions& options);

/// `param,value,algo,maximal_count,prevalent_count,millis`.
void write_bench_rows(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dyncoloc::cli
