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

#include "patternq/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "patternq/error.hpp"

namespace patternq {

Partition Partition::from_classes(int n, std::vector<std::vector<int>> classes) {
  if (n <= 0) throw Error(ErrorCode::kPartitionMismatch, "empty vertex set");
  Partition pi;
  pi.n_ = n;
  pi.class_of_.assign(n, -1);
  for (auto& cls : classes) {
    if (cls.empty()) throw Error(ErrorCode::kPartitionMismatch, "empty class");
    std::sort(cls.begin(), cls.end());
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (int k = 0; k < static_cast<int>(classes.size()); ++k) {
    for (int v : classes[k]) {
      if (v < 0 || v >= n) {
        throw Error(ErrorCode::kPartitionMismatch,
                    "vertex " + std::to_string(v) + " outside [0," +
                        std::to_string(n) + ")");
      }
      if (pi.class_of_[v] >= 0) {
        throw Error(ErrorCode::kPartitionMismatch,
                    "vertex " + std::to_string(v) + " appears twice");
      }
      pi.class_of_[v] = k;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (pi.class_of_[v] < 0) {
      throw Error(ErrorCode::kPartitionMismatch,
                  "vertex " + std::to_string(v) + " not covered");
    }
  }
  pi.classes_ = std::move(classes);
  return pi;
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < static_cast<int>(labels.size()); ++v) {
    groups[labels[v]].push_back(v);
  }
  std::vector<std::vector<int>> classes;
  for (auto& [label, members] : groups) classes.push_back(std::move(members));
  return from_classes(static_cast<int>(labels.size()), std::move(classes));
}

Partition Partition::trivial(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return from_classes(n, {all});
}

Partition Partition::discrete(int n) {
  std::vector<std::vector<int>> classes(n);
  for (int v = 0; v < n; ++v) classes[v] = {v};
  return from_classes(n, std::move(classes));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.n_ != n_) return false;
  for (const auto& cls : classes_) {
    const int target = coarser.class_of_[cls.front()];
    for (int v : cls) {
      if (coarser.class_of_[v] != target) return false;
    }
  }
  return true;
}

namespace {

void require_same_size(const WeightedGraph& g, const Partition& pi) {
  if (pi.n() != g.n()) {
    throw Error(ErrorCode::kPartitionMismatch,
                "partition covers " + std::to_string(pi.n()) +
                    " vertices, graph has " + std::to_string(g.n()));
  }
}

// sums(u, j) = sum over v in class j of p_uv.
Eigen::MatrixXd class_sums(const WeightedGraph& g, const Partition& pi) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(g.n(), pi.size());
  for (int u = 0; u < g.n(); ++u) {
    const double d = g.degree(u);
    for (const auto& [v, w] : g.neighbors(u)) {
      sums(u, pi.class_of()[v]) += w / d;
    }
  }
  return sums;
}

}  // namespace

EquitabilityCheck is_equitable(const WeightedGraph& g, const Partition& pi) {
  require_same_size(g, pi);
  const Eigen::MatrixXd sums = class_sums(g, pi);
  for (int i = 0; i < pi.size(); ++i) {
    const int first = pi[i].front();
    for (int j = 0; j < pi.size(); ++j) {
      for (int u : pi[i]) {
        if (std::abs(sums(u, j) - sums(first, j)) > kEquitableTol) {
          return {false, EquitabilityWitness{i, j, first, u, sums(first, j),
                                             sums(u, j)}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

QuotientModel quotient(const WeightedGraph& g, const Partition& pi) {
  const EquitabilityCheck check = is_equitable(g, pi);
  if (!check) {
    const auto& w = *check.witness;
    throw Error(ErrorCode::kNotEquitable,
                "vertices " + std::to_string(w.u) + " and " +
                    std::to_string(w.v) + " of class " +
                    std::to_string(w.class_i) + " send " +
                    std::to_string(w.sum_u) + " vs " + std::to_string(w.sum_v) +
                    " into class " + std::to_string(w.class_j));
  }
  const int r = pi.size();
  const Eigen::MatrixXd sums = class_sums(g, pi);
  QuotientModel qm{Eigen::MatrixXd::Zero(r, r), Eigen::VectorXd::Zero(r), {},
                   std::nullopt, pi};
  for (int i = 0; i < r; ++i) {
    qm.pbar.row(i) = sums.row(pi[i].front());
    for (int u : pi[i]) qm.dbar(i) += g.degree(u);
  }

  std::vector<std::vector<int>> reduced_adj(r);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (qm.pbar(i, j) != 0.0 || qm.pbar(j, i) != 0.0) {
        qm.reduced_edges.emplace_back(i, j);
        reduced_adj[i].push_back(j);
        reduced_adj[j].push_back(i);
      }
    }
  }

  std::vector<int> color(r, -1);
  bool bipartite = true;
  for (int start = 0; start < r && bipartite; ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty() && bipartite) {
      const int c = q.front();
      q.pop();
      for (int nb : reduced_adj[c]) {
        if (color[nb] < 0) {
          color[nb] = 1 - color[c];
          q.push(nb);
        } else if (color[nb] == color[c]) {
          bipartite = false;
        }
      }
    }
  }
  if (bipartite) qm.reduced_coloring = std::move(color);
  return qm;
}

namespace {

// Labels values so that two values share a label iff they are linked by a
// chain of gaps no larger than tol.
std::vector<int> cluster_labels(const Eigen::VectorXd& values, double tol) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) < values(b); });
  std::vector<int> labels(n, 0);
  int label = 0;
  for (int k = 1; k < n; ++k) {
    if (values(order[k]) - values(order[k - 1]) > tol) ++label;
    labels[order[k]] = label;
  }
  return labels;
}

}  // namespace

Partition coarsest_equitable_refinement(const WeightedGraph& g,
                                        const std::optional<Partition>& seed) {
  Partition current = seed.value_or(Partition::trivial(g.n()));
  require_same_size(g, current);
  while (true) {
    const Eigen::MatrixXd sums = class_sums(g, current);
    std::vector<std::vector<int>> keys(g.n());
    for (int u = 0; u < g.n(); ++u) keys[u].push_back(current.class_of()[u]);
    for (int j = 0; j < current.size(); ++j) {
      const std::vector<int> labels = cluster_labels(sums.col(j), kEquitableTol);
      for (int u = 0; u < g.n(); ++u) keys[u].push_back(labels[u]);
    }
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(g.n());
    for (int u = 0; u < g.n(); ++u) {
      next[u] = ids.try_emplace(keys[u], static_cast<int>(ids.size())).first->second;
    }
    Partition refined = Partition::from_labels(next);
    if (refined.size() == current.size()) return refined;
    current = std::move(refined);
  }
}

void check_automorphism(const WeightedGraph& g, const Permutation& perm) {
  const int n = g.n();
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::kNotPermutation,
                "permutation has " + std::to_string(perm.size()) +
                    " entries, graph has " + std::to_string(n) + " vertices");
  }
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) {
      throw Error(ErrorCode::kNotPermutation,
                  "image " + std::to_string(v) + " repeated or out of range");
    }
    seen[v] = true;
  }
  // A bijection that maps every edge to an edge of equal weight preserves
  // edge count, so non-edges map to non-edges as well.
  for (const Edge& e : g.edges()) {
    const double image = g.weight(perm[e.i], perm[e.j]);
    if (std::abs(image - e.w) > kEquitableTol * std::max(1.0, e.w)) {
      throw Error(ErrorCode::kNotAutomorphism,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                      ") maps to (" + std::to_string(perm[e.i]) + "," +
                      std::to_string(perm[e.j]) + ") with weight " +
                      std::to_string(image));
    }
  }
}

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

Partition orbits_from_generators(const WeightedGraph& g,
                                 const std::vector<Permutation>& perms) {
  for (const Permutation& perm : perms) check_automorphism(g, perm);
  // Orbits of <perms> are the connected components of v ~ perm[v].
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  for (const Permutation& perm : perms) {
    for (int v = 0; v < g.n(); ++v) {
      const int a = find_root(parent, v);
      const int b = find_root(parent, perm[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> labels(g.n());
  for (int v = 0; v < g.n(); ++v) labels[v] = find_root(parent, v);
  return Partition::from_labels(labels);
}

BlockDecomposition block_decompose(const WeightedGraph& g, const Partition& pi) {
  if (!is_equitable(g, pi)) {
    throw Error(ErrorCode::kNotEquitable, "block decomposition needs an equitable partition");
  }
  const int n = g.n();
  const int r = pi.size();

  BlockDecomposition bd;
  bd.partition = pi;
  bd.q = Eigen::MatrixXd::Zero(n, r);
  for (int j = 0; j < r; ++j) {
    bd.representatives.push_back(pi[j].front());
    for (int v : pi[j]) bd.q(v, j) = 1.0;
  }
  for (int j = 0; j < r; ++j) {
    for (size_t k = 1; k < pi[j].size(); ++k) {
      bd.transverse_vertices.push_back(pi[j][k]);
    }
  }
  bd.r_basis = Eigen::MatrixXd::Zero(n, n - r);
  for (int c = 0; c < n - r; ++c) bd.r_basis(bd.transverse_vertices[c], c) = 1.0;
  bd.t.resize(n, n);
  bd.t << bd.q, bd.r_basis;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(bd.t);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularTransform, "[Q R] is not invertible");
  }
  const ScaledAdjacency sa = scaled_adjacency(g);
  const Eigen::MatrixXd tilde = lu.solve(sa.p * bd.t);
  bd.pbar_block = tilde.topLeftCorner(r, r);
  bd.c_block = tilde.topRightCorner(r, n - r);
  bd.m_block = tilde.bottomRightCorner(n - r, n - r);
  bd.lower_left_max =
      n > r ? tilde.bottomLeftCorner(n - r, r).cwiseAbs().maxCoeff() : 0.0;
  return bd;
}

}  // namespace patternq
