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

// Equitable partitions of a contact graph: verification, refinement, orbit
// partitions, quotient matrices and the block similarity that separates the
// class-constant subspace from its complement.

#ifndef PATTERNQ_PARTITION_HPP_
#define PATTERNQ_PARTITION_HPP_

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "patternq/graph.hpp"

namespace patternq {

/// Row sums of P into a class must agree within this tolerance.
inline constexpr double kEquitableTol = 1e-12;

/// Disjoint cover of {0..n-1}. Classes are sorted internally and ordered by
/// their minimum element.
class Partition {
 public:
  /// Validates and canonicalizes. Throws kPartitionMismatch.
  static Partition from_classes(int n, std::vector<std::vector<int>> classes);
  /// Inverse of class_of(): class labels are renumbered canonically.
  static Partition from_labels(const std::vector<int>& labels);
  static Partition trivial(int n);
  static Partition discrete(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  const std::vector<int>& operator[](int k) const { return classes_[k]; }
  /// class_of()[v] is the index of the class containing v.
  const std::vector<int>& class_of() const { return class_of_; }

  /// True when every class of *this lies inside a class of coarser.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.classes_ == b.classes_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
};

struct EquitabilityWitness {
  int class_i = 0;
  int class_j = 0;
  int u = 0;
  int v = 0;
  double sum_u = 0.0;
  double sum_v = 0.0;
};

struct EquitabilityCheck {
  bool equitable = false;
  std::optional<EquitabilityWitness> witness;

  explicit operator bool() const { return equitable; }
};

/// Throws kPartitionMismatch when pi.n() != g.n().
EquitabilityCheck is_equitable(const WeightedGraph& g, const Partition& pi);

struct QuotientModel {
  Eigen::MatrixXd pbar;
  /// Class-aggregated degrees; d̄_i p̄_ij = d̄_j p̄_ji.
  Eigen::VectorXd dbar;
  /// Reduced graph on classes, i < j, self-loops omitted.
  std::vector<std::pair<int, int>> reduced_edges;
  /// 0/1 side per class when the reduced graph is bipartite.
  std::optional<std::vector<int>> reduced_coloring;
  Partition partition;
};

/// Throws kNotEquitable.
QuotientModel quotient(const WeightedGraph& g, const Partition& pi);

/// Coarsest equitable partition refining seed (the whole vertex set when
/// seed is empty).
Partition coarsest_equitable_refinement(
    const WeightedGraph& g, const std::optional<Partition>& seed = std::nullopt);

using Permutation = std::vector<int>;

/// Throws kNotPermutation or kNotAutomorphism (the message names the
/// offending pair).
void check_automorphism(const WeightedGraph& g, const Permutation& perm);

/// Orbits of the group generated by perms. Each generator is validated with
/// check_automorphism; the group itself is never enumerated.
Partition orbits_from_generators(const WeightedGraph& g,
                                 const std::vector<Permutation>& perms);

/// T = [Q R] and the blocks of T^{-1} P T = [[pbar, c], [0, m]].
struct BlockDecomposition {
  /// Minimum vertex of each class.
  std::vector<int> representatives;
  /// Vertex k behind each column of r_basis, class-major.
  std::vector<int> transverse_vertices;
  Eigen::MatrixXd q;
  Eigen::MatrixXd r_basis;
  Eigen::MatrixXd t;
  Eigen::MatrixXd pbar_block;
  Eigen::MatrixXd c_block;
  Eigen::MatrixXd m_block;
  /// Max-abs entry of the lower-left block of T^{-1} P T.
  double lower_left_max = 0.0;
  Partition partition;
};

/// Throws kNotEquitable, kSingularTransform.
BlockDecomposition block_decompose(const WeightedGraph& g, const Partition& pi);

}  // namespace patternq

#endif  // PATTERNQ_PARTITION_HPP_
