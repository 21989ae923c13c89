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

// Eigenvalue machinery. Every matrix the project needs is similar to a
// symmetric one (through detailed balance or a positive diagonal scaling), so
// the only dense eigensolver here is cyclic Jacobi.

#ifndef PATTERNQ_SPECTRAL_HPP_
#define PATTERNQ_SPECTRAL_HPP_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "patternq/graph.hpp"

namespace patternq {

struct Spectrum {
  /// Sorted descending.
  std::vector<double> eigenvalues;
  /// Column k pairs with eigenvalues[k]; empty when not computed.
  Eigen::MatrixXd eigenvectors;

  double max() const { return eigenvalues.front(); }
  double min() const { return eigenvalues.back(); }
  /// Number of eigenvalues within tol of value.
  int multiplicity(double value, double tol = 1e-8) const;
};

/// Cyclic Jacobi. Throws kNotSymmetric (asymmetry above 1e-10) or
/// kNoConvergence (more than 100 sweeps).
Spectrum sym_eigen(const Eigen::MatrixXd& a);

/// Spectrum of a row-stochastic p that is reversible with respect to d
/// (d_i p_ij = d_j p_ji), through D^{1/2} P D^{-1/2}. Eigenvectors are
/// returned in the original coordinates, unit length, with the top one
/// positive. Throws kDetailedBalanceViolated.
Spectrum eigen_reversible(const Eigen::MatrixXd& p, const Eigen::VectorXd& d);

struct PerronResult {
  double rho = 0.0;
  /// Strictly positive, max-norm one.
  Eigen::VectorXd v;
  int iterations = 0;
};

/// Perron root of a nonnegative irreducible matrix by shifted power
/// iteration. Throws kNegativeEntry, kReducible or kNoConvergence.
PerronResult spectral_radius_nonneg(const Eigen::MatrixXd& m);

/// Spectrum of -I + diag(t) P for strictly negative t, computed on the
/// symmetric matrix with entries -w_ij sqrt(|t_i t_j| / (d_i d_j)).
/// Throws kNonNegativeSlope when some t_i >= 0.
Spectrum jacobian_spectrum(const ScaledAdjacency& p, const Eigen::VectorXd& t);

struct AbscissaEstimate {
  double abscissa = 0.0;
  /// Set when the Gershgorin/power-iteration fallback was used; abscissa is
  /// then the Gershgorin upper bound.
  bool approximate = false;
  /// Fallback only: power-iteration estimate of the rightmost eigenvalue.
  std::optional<double> estimate;
};

/// Spectral abscissa of -I + diag(t) P, falling back to a bound when
/// jacobian_spectrum refuses t.
AbscissaEstimate jacobian_abscissa(const ScaledAdjacency& p,
                                   const Eigen::VectorXd& t);

/// Bottleneck distance between two real multisets of equal size (infinity
/// when the sizes differ).
double multiset_distance(std::vector<double> a, std::vector<double> b);

/// Removes from whole one element within tol of each element of part.
/// Returns nullopt when some element of part has no partner.
std::optional<std::vector<double>> multiset_difference(
    const std::vector<double>& whole, const std::vector<double>& part,
    double tol);

}  // namespace patternq

#endif  // PATTERNQ_SPECTRAL_HPP_
