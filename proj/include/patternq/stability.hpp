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

// Local stability of lifted steady-state patterns, three ways: the spectrum
// of the full Jacobian, the representative/transverse block split, and the
// small-gain test rho(P Gamma) < 1 evaluated on the quotient.

#ifndef PATTERNQ_STABILITY_HPP_
#define PATTERNQ_STABILITY_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "patternq/cell_model.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"
#include "patternq/spectral.hpp"

namespace patternq {

/// Width of the MARGINAL band around abscissa 0 and around rho = 1.
inline constexpr double kMarginalBand = 1e-9;

enum class StabilityVerdict { kStable, kUnstable, kMarginal };
enum class SmallGainVerdict { kCertifiedStable, kNotCertified };

std::string_view verdict_name(StabilityVerdict v);
std::string_view verdict_name(SmallGainVerdict v);

struct FullStability {
  double abscissa = 0.0;
  StabilityVerdict verdict = StabilityVerdict::kMarginal;
  /// Eigenvalues of (-I + diag(T'(u)) P) / tau.
  Spectrum spectrum;
};

/// Throws kNotSteadyState when ||u - P T(u)|| >= 1e-8.
FullStability full_jacobian_stability(const WeightedGraph& g, const StaticMap& model,
                                      const Eigen::VectorXd& u);

struct BlockStability {
  /// (-I_r + diag(T'(z)) P̄) / tau and its spectrum.
  Eigen::MatrixXd representative_matrix;
  Spectrum representative;
  /// (-I + Theta M) / tau, Theta holding T'(z) of each transverse column's
  /// class, and its eigenvalues (full spectrum minus representative).
  Eigen::MatrixXd transverse_matrix;
  std::vector<double> transverse_eigenvalues;
  std::vector<double> full_eigenvalues;
  /// Distance of the representative spectrum to its partners in the full one.
  double matching_distance = 0.0;
  /// Relative mismatch of tr(A_D^k) against the sum of mu^k, k = 1..3.
  double trace_residual = 0.0;
  /// Largest deviation of T^{-1} J T from [[rep, *], [0, transverse]].
  double structure_residual = 0.0;
  /// Max of the three residuals above.
  double consistency = 0.0;
};

/// Throws kOrderingMismatch when R's columns are not class-major.
BlockStability block_stability(const WeightedGraph& g, const BlockDecomposition& decomp,
                               const StaticMap& model, const Eigen::VectorXd& z);

struct GainProfile {
  Eigen::VectorXd gamma_bar;
  Eigen::VectorXd gamma;
};

GainProfile gain_profile(const Partition& pi, const StaticMap& model,
                         const Eigen::VectorXd& z);

struct SmallGainReport {
  GainProfile gains;
  double rho_full = 0.0;
  double rho_reduced = 0.0;
  Eigen::VectorXd perron_full;
  Eigen::VectorXd perron_reduced;
  SmallGainVerdict verdict = SmallGainVerdict::kNotCertified;
  /// I - Gamma P is a nonsingular M-matrix (all leading principal minors
  /// positive).
  bool m_matrix = false;
};

SmallGainReport small_gain(const WeightedGraph& g, const Partition& pi,
                           const StaticMap& model, const Eigen::VectorXd& z);

/// Positive leading principal minors of a Z-matrix, via elimination without
/// pivoting. Pivots below 1e-12 of the largest entry count as zero.
bool is_nonsingular_m_matrix(const Eigen::MatrixXd& a);

struct StabilityReport {
  std::optional<FullStability> full;
  std::optional<BlockStability> block;
  std::optional<SmallGainReport> small_gain;
};

enum class StabilityMethod { kFull, kBlock, kSmallGain, kAll };

StabilityMethod stability_method_from_name(std::string_view name);

StabilityReport analyze_stability(const WeightedGraph& g, const Partition& pi,
                                  const StaticMap& model, const Eigen::VectorXd& z,
                                  StabilityMethod method = StabilityMethod::kAll);

}  // namespace patternq

#endif  // PATTERNQ_STABILITY_HPP_
