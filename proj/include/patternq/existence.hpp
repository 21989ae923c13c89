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

// Existence of class-structured steady states: the eigenvalue test on the
// quotient matrix, the reduced fixed-point solve z = P̄ T(z), and the lift of
// a reduced root back to every cell.

#ifndef PATTERNQ_EXISTENCE_HPP_
#define PATTERNQ_EXISTENCE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "patternq/cell_model.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"

namespace patternq {

enum class ExistenceVerdict { kCertified, kInconclusive, kAssumptionFailed };

std::string_view verdict_name(ExistenceVerdict v);

/// |T'(u*)| lambda_r must fall below -1 by more than this margin; exact
/// boundary cases (e.g. |T'(u*)| = 2 against lambda_r = -1/2) are not
/// certified.
inline constexpr double kCertifyMargin = 1e-9;

struct ExistenceCertificate {
  double u_star = 0.0;
  double t_prime_star = 0.0;
  /// Spectrum of P̄, descending.
  std::vector<double> quotient_eigenvalues;
  double lambda_r = 0.0;
  int lambda_r_multiplicity = 1;
  Eigen::VectorXd v_r;
  double condition_value = 0.0;
  /// Reduced graph is bipartite.
  bool assumption1 = false;
  ExistenceVerdict verdict = ExistenceVerdict::kInconclusive;
};

ExistenceCertificate certify(const QuotientModel& quotient, const StaticMap& model);

/// With R = diag(+-1) taken from the reduced two-coloring, checks that
/// R (-I + T'(u*) P̄) R has nonnegative off-diagonal entries. False when the
/// reduced graph is not bipartite.
bool auxiliary_cooperative(const QuotientModel& quotient, const StaticMap& model);

enum class SolveStrategy { kNewton, kOde };

std::string_view strategy_name(SolveStrategy s);
SolveStrategy strategy_from_name(std::string_view name);

struct PatternSolution {
  /// Class values of the input pattern.
  Eigen::VectorXd z;
  /// Lifted input u_i = z_{class(i)} and state x_i = S(u_i); empty until lift.
  Eigen::VectorXd u;
  Eigen::VectorXd x;
  double residual_reduced = 0.0;
  double residual_full = 0.0;
  bool homogeneous = true;
  /// Which perturbation of the homogeneous state led here: +1, -1, or 0.
  int side = 0;
  /// Other nonhomogeneous roots found from the opposite start.
  std::vector<Eigen::VectorXd> alternatives;
  std::string strategy_used;
  /// Set when the homogeneous solution is returned for an uncertified input.
  std::optional<std::string> warning;
};

struct SolveOptions {
  SolveStrategy strategy = SolveStrategy::kNewton;
  /// Called every few thousand ODE steps with (step, ||z'||_inf).
  std::function<void(long, double)> progress;
};

/// Nonhomogeneous root of z = P̄ T(z). Returns the homogeneous root with a
/// warning when the certificate is not CERTIFIED. Throws
/// kOnlyHomogeneousFound or kNoConvergence.
PatternSolution solve_reduced(const QuotientModel& quotient, const StaticMap& model,
                              const SolveOptions& options = {});

/// max-norm of u - P T(u).
double full_residual(const WeightedGraph& g, const Eigen::VectorXd& u,
                     const StaticMap& model);

/// Lifts class values to all cells. Throws kDimensionMismatch, kNotEquitable.
PatternSolution lift(const WeightedGraph& g, const Partition& pi,
                     const Eigen::VectorXd& z, const StaticMap& model);

/// Lifts solution.z and copies the solver metadata.
PatternSolution lift(const WeightedGraph& g, const Partition& pi,
                     const PatternSolution& solution, const StaticMap& model);

}  // namespace patternq

#endif  // PATTERNQ_EXISTENCE_HPP_
