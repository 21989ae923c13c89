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

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the library's algorithms; only its data types.

#ifndef PATTERNQ_TESTS_ORACLES_HPP_
#define PATTERNQ_TESTS_ORACLES_HPP_

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "patternq/catalog.hpp"
#include "patternq/cell_model.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"

namespace patternq::oracle {

using Classes = std::vector<std::vector<int>>;

/// Every set partition of {0..n-1} (restricted growth strings).
std::vector<Classes> all_set_partitions(int n);

/// Dense W straight from the edge list.
Eigen::MatrixXd weights(const WeightedGraph& g);

/// Scaled-row-sum check, recomputed from scratch.
bool equitable(const Eigen::MatrixXd& w, const Classes& classes, double tol = 1e-9);

/// a refines b: every class of a lies inside a class of b.
bool refines(const Classes& a, const Classes& b, int n);

/// Enumerates all partitions, keeps equitable ones refining seed, returns the
/// one that every other refines (canonical order).
Classes brute_force_coarsest(const WeightedGraph& g, const Classes& seed);

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

/// Householder reduction of a symmetric matrix to tridiagonal form.
Tridiagonal tridiagonalize(const Eigen::MatrixXd& a);

/// Eigenvalues (descending) of a symmetric matrix by bisection on the
/// Sturm count of the tridiagonal form.
std::vector<double> bisection_eigenvalues(const Eigen::MatrixXd& a, double tol = 1e-13);

/// Number of eigenvalues of symmetric a below x.
int count_below(const Tridiagonal& t, double x);
int count_below(const Eigen::MatrixXd& a, double x);

/// Low value of the two-level checkerboard: the root of T(T(z)) = z in
/// (0, u*), by bisection with the closed-form Hill map.
double checkerboard_low(double amplitude, double threshold, double exponent);

/// Closed-form Hill map.
double hill(double amplitude, double threshold, double exponent, double u);

/// All connected graphs on n vertices with unit weights, one per edge set.
std::vector<WeightedGraph> connected_unit_graphs(int n);

/// Random connected graph with n vertices and weights from {1, 2, 3}.
WeightedGraph random_weighted_graph(int n, std::mt19937_64& rng);

/// Orbit partition of a random subset of the lattice's automorphism pool,
/// computed by explicit group closure (BFS over images).
Classes random_orbit_partition(const LatticeSpec& spec, std::mt19937_64& rng);

/// Lattices with known automorphism pools used by randomized tests.
std::vector<LatticeSpec> sample_lattices();

}  // namespace patternq::oracle

#endif  // PATTERNQ_TESTS_ORACLES_HPP_
