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

#ifndef PATTERNQ_SIMULATE_HPP_
#define PATTERNQ_SIMULATE_HPP_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "patternq/cell_model.hpp"
#include "patternq/existence.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"

namespace patternq {

struct SimulationOptions {
  /// Step and horizon in units of tau.
  double step = 0.01;
  double max_time = 1e4;
  /// Stop once ||x'||_inf drops below this.
  double conv_tol = 1e-9;
  size_t max_samples = 10000;
  /// Invoked after every accepted step with (t, x).
  std::function<void(double, const Eigen::VectorXd&)> observer;
};

struct SimulationTrace {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  Eigen::VectorXd final_state;
  double final_time = 0.0;
  bool converged = false;
  double final_derivative_norm = 0.0;
};

/// Fixed-step RK4 on x' = (-x + T(P x)) / tau. Throws kBadOptions and
/// kStateOutOfBox (the state left [0, A], i.e. the step is too large).
SimulationTrace integrate(const WeightedGraph& g, const StaticMap& model,
                          const Eigen::VectorXd& x0, const SimulationOptions& opts = {});

/// u_hom 1 + eps direction / ||direction||_inf, clipped to [0, upper].
Eigen::VectorXd perturbed_start(double u_hom, const Eigen::VectorXd& direction,
                                double eps, double upper);

struct EmpiricalPattern {
  /// Cells grouped by final value, groups ordered by value descending.
  std::vector<std::vector<int>> groups;
  std::vector<double> values;

  Partition as_partition(int n) const;
};

/// Single-linkage clustering of the final state with gap cluster_tol.
/// Throws kNotConverged.
EmpiricalPattern classify(const SimulationTrace& trace, double cluster_tol);

struct VerificationReport {
  bool certified = false;
  std::string note;
  SimulationTrace trace;
  EmpiricalPattern observed;
  /// Observed grouping equals the partition.
  bool match = false;
  /// max_i |(P x_final)_i - z_class(i)|, best over the known roots.
  double max_deviation = 0.0;

  std::string outcome() const { return match ? "MATCH" : "NO_MATCH"; }
};

/// Simulates from the homogeneous state nudged along the lifted lambda_r
/// eigenvector and compares the outcome with the predicted pattern.
VerificationReport verify_certificate(const WeightedGraph& g, const Partition& pi,
                                      const StaticMap& model,
                                      const PatternSolution& pattern, double eps = 0.01,
                                      const SimulationOptions& opts = {});

}  // namespace patternq

#endif  // PATTERNQ_SIMULATE_HPP_
