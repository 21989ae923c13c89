// Copyright 2026 The patternq Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named graph/partition pairs shipped with the tool, and pools of known
// automorphisms for the built-in lattices.

#ifndef PATTERNQ_CATALOG_HPP_
#define PATTERNQ_CATALOG_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "patternq/graph.hpp"
#include "patternq/partition.hpp"

namespace patternq {

struct CatalogEntry {
  std::string name;
  LatticeSpec lattice;
  /// Generators whose orbits give the partition; empty when the partition
  /// is not an orbit partition.
  std::vector<Permutation> generators;
  Partition partition;
  std::string description;
};

/// bipartite_torus, mesh_b, hex_a .. hex_e, pent_hex, fig5, path4_bipartite.
const std::vector<CatalogEntry>& catalog();

/// Throws kParse for unknown names.
const CatalogEntry& catalog_entry(std::string_view name);

/// Translations, reflections and rotations of the lattice that are graph
/// automorphisms. Random subsets generate orbit partitions.
std::vector<Permutation> lattice_automorphisms(const LatticeSpec& spec);

/// Torus or hex-torus translation (r, c) -> (r + dr, c + dc).
Permutation lattice_translation(const LatticeSpec& spec, int dr, int dc);

}  // namespace patternq

#endif  // PATTERNQ_CATALOG_HPP_
