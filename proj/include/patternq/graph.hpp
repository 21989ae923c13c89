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

// Weighted contact graphs, their scaled adjacency matrices, and generators
// for the lattices used throughout the project.

#ifndef PATTERNQ_GRAPH_HPP_
#define PATTERNQ_GRAPH_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace patternq {

struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected contact graph with strictly positive weights. Edges are stored
/// canonically (i < j, sorted); absent pairs have weight zero.
class WeightedGraph {
 public:
  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbors of v as (vertex, weight) pairs in increasing vertex order.
  const std::vector<std::pair<int, double>>& neighbors(int v) const {
    return adj_[v];
  }
  double degree(int v) const;
  /// w_{ij}; zero when i and j are not in contact.
  double weight(int i, int j) const;
  /// Dense symmetric weight matrix W.
  Eigen::MatrixXd weight_matrix() const;

 private:
  friend WeightedGraph build_graph(int n, std::vector<Edge> edges);
  WeightedGraph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

/// Validates and canonicalizes an edge list. Throws Error with kBadIndex,
/// kSelfLoop, kNonpositiveWeight or kDuplicateEdge.
WeightedGraph build_graph(int n, std::vector<Edge> edges);

/// Row-stochastic P = D^{-1} W together with the degrees d_i = sum_j w_ij.
struct ScaledAdjacency {
  Eigen::MatrixXd p;
  Eigen::VectorXd d;
};

/// Throws kIsolatedVertex if some vertex has zero degree.
ScaledAdjacency scaled_adjacency(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

/// Two-coloring (first side contains vertex 0), or nullopt if the graph has
/// an odd cycle. Throws kNotConnected on disconnected input.
std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(
    const WeightedGraph& g);

enum class LatticeKind { kPath, kCycle, kTorusMesh, kHexTorus, kBuckyball, kFig5 };

struct LatticeSpec {
  LatticeKind kind = LatticeKind::kPath;
  int n = 0;     // path, cycle
  int rows = 0;  // torus_mesh, hex_torus
  int cols = 0;

  /// Parses "path:5", "cycle:6", "torus_mesh:4,4", "hex_torus:6,6",
  /// "buckyball" or "fig5". Throws kParse.
  static LatticeSpec parse(std::string_view text);
  std::string to_string() const;
};

std::string_view lattice_kind_name(LatticeKind kind);
LatticeKind lattice_kind_from_name(std::string_view name);

/// Unit-weight lattice with row-major numbering (vertex r*cols + c).
///
/// hex_torus uses axial coordinates: (r, c) touches (r, c+-1), (r+-1, c),
/// (r+1, c-1) and (r-1, c+1), all modulo the lattice size. buckyball lists
/// the 12 pentagonal faces first, then the 20 hexagonal faces. fig5 is the
/// 8-vertex graph with edges 0-1, 0-2, 1-2, 2-3, 3-4, 4-5, 5-6, 5-7, 6-7.
/// Throws kBadLatticeSize.
WeightedGraph generate(const LatticeSpec& spec);

}  // namespace patternq

#endif  // PATTERNQ_GRAPH_HPP_
