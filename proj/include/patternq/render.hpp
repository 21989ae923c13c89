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

// Text and SVG pictures of a grouped state on the built-in lattices.

#ifndef PATTERNQ_RENDER_HPP_
#define PATTERNQ_RENDER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "patternq/graph.hpp"

namespace patternq {

enum class Layout { kTorus, kHex, kBucky };

Layout layout_from_name(std::string_view name);

/// Layout matching a lattice kind; kBadIndex for kinds without one.
Layout layout_for(LatticeKind kind);

/// Grid of the layout. rows/cols of 0 mean "square, inferred from n".
struct LayoutGrid {
  Layout layout = Layout::kTorus;
  int rows = 0;
  int cols = 0;
};

/// Throws kBadLatticeSize when n does not fit.
LayoutGrid resolve_grid(Layout layout, int n, int rows = 0, int cols = 0);

/// group[v] is the rank of v's group (0 = highest value, drawn shaded).
std::string render_ascii(const LayoutGrid& grid, const std::vector<int>& group);
std::string render_svg(const LayoutGrid& grid, const std::vector<int>& group);

/// Group ranks from values: single-linkage with the given gap, groups
/// ranked by value descending.
std::vector<int> group_ranks(const std::vector<double>& values, double gap);

}  // namespace patternq

#endif  // PATTERNQ_RENDER_HPP_
