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

#include "patternq/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "icosahedron.hpp"
#include "patternq/error.hpp"

namespace patternq {

WeightedGraph build_graph(int n, std::vector<Edge> edges) {
  if (n <= 0) {
    throw Error(ErrorCode::kBadIndex, "vertex count must be positive");
  }
  for (Edge& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw Error(ErrorCode::kBadIndex,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                      ") outside [0," + std::to_string(n) + ")");
    }
    if (e.i == e.j) {
      throw Error(ErrorCode::kSelfLoop, "self-loop at " + std::to_string(e.i));
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::kNonpositiveWeight,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                      ") has weight " + std::to_string(e.w));
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "pair (" + std::to_string(edges[k].i) + "," +
                      std::to_string(edges[k].j) + ") listed twice");
    }
  }

  WeightedGraph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  for (const Edge& e : edges) {
    g.adj_[e.i].emplace_back(e.j, e.w);
    g.adj_[e.j].emplace_back(e.i, e.w);
  }
  for (auto& row : g.adj_) std::sort(row.begin(), row.end());
  g.edges_ = std::move(edges);
  return g;
}

double WeightedGraph::degree(int v) const {
  double d = 0.0;
  for (const auto& [u, w] : adj_[v]) d += w;
  return d;
}

double WeightedGraph::weight(int i, int j) const {
  const auto& row = adj_[i];
  auto it = std::lower_bound(row.begin(), row.end(), std::pair(j, 0.0),
                             [](const auto& a, const auto& b) {
                               return a.first < b.first;
                             });
  return (it != row.end() && it->first == j) ? it->second : 0.0;
}

Eigen::MatrixXd WeightedGraph::weight_matrix() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    w(e.i, e.j) = e.w;
    w(e.j, e.i) = e.w;
  }
  return w;
}

ScaledAdjacency scaled_adjacency(const WeightedGraph& g) {
  const int n = g.n();
  ScaledAdjacency s{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    const double d = g.degree(i);
    if (!(d > 0.0)) {
      throw Error(ErrorCode::kIsolatedVertex,
                  "vertex " + std::to_string(i) + " has no contacts");
    }
    s.d(i) = d;
    for (const auto& [j, w] : g.neighbors(i)) s.p(i, j) = w / d;
  }
  return s;
}

namespace {

// BFS coloring; returns colors (-1 where unreached) and whether every
// reached edge was properly colored.
std::pair<std::vector<int>, bool> two_color_from(const WeightedGraph& g,
                                                 int start) {
  std::vector<int> color(g.n(), -1);
  bool proper = true;
  std::queue<int> q;
  color[start] = 0;
  q.push(start);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& [u, w] : g.neighbors(v)) {
      if (color[u] < 0) {
        color[u] = 1 - color[v];
        q.push(u);
      } else if (color[u] == color[v]) {
        proper = false;
      }
    }
  }
  return {std::move(color), proper};
}

}  // namespace

bool is_connected(const WeightedGraph& g) {
  const auto [color, proper] = two_color_from(g, 0);
  return std::none_of(color.begin(), color.end(),
                      [](int c) { return c < 0; });
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(
    const WeightedGraph& g) {
  const auto [color, proper] = two_color_from(g, 0);
  if (std::any_of(color.begin(), color.end(), [](int c) { return c < 0; })) {
    throw Error(ErrorCode::kNotConnected, "bipartition needs a connected graph");
  }
  if (!proper) return std::nullopt;
  std::pair<std::vector<int>, std::vector<int>> sides;
  for (int v = 0; v < g.n(); ++v) {
    (color[v] == 0 ? sides.first : sides.second).push_back(v);
  }
  return sides;
}

std::string_view lattice_kind_name(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::kPath: return "path";
    case LatticeKind::kCycle: return "cycle";
    case LatticeKind::kTorusMesh: return "torus_mesh";
    case LatticeKind::kHexTorus: return "hex_torus";
    case LatticeKind::kBuckyball: return "buckyball";
    case LatticeKind::kFig5: return "fig5";
  }
  return "?";
}

LatticeKind lattice_kind_from_name(std::string_view name) {
  for (LatticeKind k :
       {LatticeKind::kPath, LatticeKind::kCycle, LatticeKind::kTorusMesh,
        LatticeKind::kHexTorus, LatticeKind::kBuckyball, LatticeKind::kFig5}) {
    if (lattice_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::kParse, "unknown lattice kind '" + std::string(name) + "'");
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const size_t comma = text.find(',');
    const std::string_view tok = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::kParse, "bad integer '" + std::string(tok) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

LatticeSpec LatticeSpec::parse(std::string_view text) {
  const size_t colon = text.find(':');
  LatticeSpec spec;
  spec.kind = lattice_kind_from_name(text.substr(0, colon));
  const std::vector<int> args =
      colon == std::string_view::npos ? std::vector<int>{}
                                      : parse_int_list(text.substr(colon + 1));
  switch (spec.kind) {
    case LatticeKind::kPath:
    case LatticeKind::kCycle:
      if (args.size() != 1) throw Error(ErrorCode::kParse, "expected kind:n");
      spec.n = args[0];
      break;
    case LatticeKind::kTorusMesh:
    case LatticeKind::kHexTorus:
      if (args.size() != 2) throw Error(ErrorCode::kParse, "expected kind:rows,cols");
      spec.rows = args[0];
      spec.cols = args[1];
      break;
    case LatticeKind::kBuckyball:
    case LatticeKind::kFig5:
      if (!args.empty()) throw Error(ErrorCode::kParse, "kind takes no size");
      break;
  }
  return spec;
}

std::string LatticeSpec::to_string() const {
  std::string out(lattice_kind_name(kind));
  switch (kind) {
    case LatticeKind::kPath:
    case LatticeKind::kCycle:
      out += ":" + std::to_string(n);
      break;
    case LatticeKind::kTorusMesh:
    case LatticeKind::kHexTorus:
      out += ":" + std::to_string(rows) + "," + std::to_string(cols);
      break;
    default:
      break;
  }
  return out;
}

namespace {

WeightedGraph buckyball() {
  const auto faces = internal::icosahedron_faces();
  std::vector<Edge> edges;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    for (int v : faces[f]) edges.push_back({v, 12 + f, 1.0});
    for (int h = f + 1; h < static_cast<int>(faces.size()); ++h) {
      int shared = 0;
      for (int v : faces[f])
        shared += std::count(faces[h].begin(), faces[h].end(), v);
      if (shared == 2) edges.push_back({12 + f, 12 + h, 1.0});
    }
  }
  return build_graph(12 + static_cast<int>(faces.size()), std::move(edges));
}

void require(bool ok, const LatticeSpec& spec) {
  if (!ok) throw Error(ErrorCode::kBadLatticeSize, spec.to_string());
}

}  // namespace

WeightedGraph generate(const LatticeSpec& spec) {
  std::vector<Edge> edges;
  switch (spec.kind) {
    case LatticeKind::kPath:
      require(spec.n >= 2, spec);
      for (int i = 0; i + 1 < spec.n; ++i) edges.push_back({i, i + 1, 1.0});
      return build_graph(spec.n, std::move(edges));
    case LatticeKind::kCycle:
      require(spec.n >= 3, spec);
      for (int i = 0; i < spec.n; ++i) edges.push_back({i, (i + 1) % spec.n, 1.0});
      return build_graph(spec.n, std::move(edges));
    case LatticeKind::kTorusMesh:
    case LatticeKind::kHexTorus: {
      // Sizes below 3 would make opposite wraparound neighbors coincide.
      require(spec.rows >= 3 && spec.cols >= 3, spec);
      const int rows = spec.rows, cols = spec.cols;
      auto id = [&](int r, int c) {
        return ((r % rows + rows) % rows) * cols + (c % cols + cols) % cols;
      };
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          edges.push_back({id(r, c), id(r, c + 1), 1.0});
          edges.push_back({id(r, c), id(r + 1, c), 1.0});
          if (spec.kind == LatticeKind::kHexTorus) {
            edges.push_back({id(r, c), id(r + 1, c - 1), 1.0});
          }
        }
      }
      return build_graph(rows * cols, std::move(edges));
    }
    case LatticeKind::kBuckyball:
      return buckyball();
    case LatticeKind::kFig5:
      return build_graph(8, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0},
                             {2, 3, 1.0}, {3, 4, 1.0}, {4, 5, 1.0},
                             {5, 6, 1.0}, {5, 7, 1.0}, {6, 7, 1.0}});
  }
  throw Error(ErrorCode::kBadLatticeSize, "unknown lattice kind");
}

}  // namespace patternq
