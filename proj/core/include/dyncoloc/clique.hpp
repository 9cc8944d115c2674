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

#include <vector>

#include "dyncoloc/model.hpp"
#include "dyncoloc/size2.hpp"

namespace dyncoloc {

/// A set of features that are pairwise adjacent in a FeatureGraph.
using FeatureClique = Pattern;

/// Every maximal clique of size >= 2, sorted ascending.
///
/// Degree-first search: take the highest-degree vertex of the current
/// vertex set (lowest id on ties), recurse into its neighborhood with the
/// vertex added to the partial clique, then take each non-neighbor in turn
/// and recurse into its neighbors among the vertices not yet used as a
/// branch root. A vertex set without edges closes the partial clique once per
/// member. The raw emissions can repeat or nest across branches, so
/// duplicates and strict subsets are filtered out afterwards.
std::vector<FeatureClique> maximal_cliques(const FeatureGraph& graph);

}  // namespace dyncoloc
