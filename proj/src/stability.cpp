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

#include "patternq/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "patternq/error.hpp"
#include "patternq/existence.hpp"

namespace patternq {

namespace {

constexpr double kSteadyStateTol = 1e-8;
constexpr double kMatchTol = 1e-8;

StabilityVerdict classify_abscissa(double abscissa) {
  if (abscissa < -kMarginalBand) return StabilityVerdict::kStable;
  if (abscissa > kMarginalBand) return StabilityVerdict::kUnstable;
  return StabilityVerdict::kMarginal;
}

Eigen::VectorXd slopes(const StaticMap& m, const Eigen::VectorXd& u) {
  return u.unaryExpr([&](double v) { return t_prime(m, v); });
}

}  // namespace

std::string_view verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::kStable: return "STABLE";
    case StabilityVerdict::kUnstable: return "UNSTABLE";
    case StabilityVerdict::kMarginal: return "MARGINAL";
  }
  return "?";
}

std::string_view verdict_name(SmallGainVerdict v) {
  return v == SmallGainVerdict::kCertifiedStable ? "CERTIFIED_STABLE" : "NOT_CERTIFIED";
}

FullStability full_jacobian_stability(const WeightedGraph& g, const StaticMap& model,
                                      const Eigen::VectorXd& u) {
  if (u.size() != g.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "pattern length differs from graph size");
  }
  const double residual = full_residual(g, u, model);
  if (!(residual < kSteadyStateTol)) {
    throw Error(ErrorCode::kNotSteadyState,
                "||u - P T(u)|| = " + std::to_string(residual));
  }
  FullStability out;
  out.spectrum = jacobian_spectrum(scaled_adjacency(g), slopes(model, u));
  for (double& e : out.spectrum.eigenvalues) e /= model.tau();
  out.abscissa = out.spectrum.max();
  out.verdict = classify_abscissa(out.abscissa);
  return out;
}

BlockStability block_stability(const WeightedGraph& g, const BlockDecomposition& decomp,
                               const StaticMap& model, const Eigen::VectorXd& z) {
  const Partition& pi = decomp.partition;
  const int n = pi.n();
  const int r = pi.size();
  if (z.size() != r) {
    throw Error(ErrorCode::kDimensionMismatch, "z length differs from class count");
  }
  for (size_t c = 1; c < decomp.transverse_vertices.size(); ++c) {
    const int prev = decomp.transverse_vertices[c - 1];
    const int cur = decomp.transverse_vertices[c];
    const int cp = pi.class_of()[prev], cc = pi.class_of()[cur];
    if (cc < cp || (cc == cp && cur < prev)) {
      throw Error(ErrorCode::kOrderingMismatch,
                  "transverse columns are not in class-major order");
    }
  }

  const QuotientModel qm = quotient(g, pi);
  const double tau = model.tau();
  const Eigen::VectorXd t_bar = slopes(model, z);
  Eigen::VectorXd t_full(n);
  for (int i = 0; i < n; ++i) t_full(i) = t_bar(pi.class_of()[i]);
  Eigen::VectorXd theta(n - r);
  for (int c = 0; c < n - r; ++c) {
    theta(c) = t_bar(pi.class_of()[decomp.transverse_vertices[c]]);
  }

  BlockStability out;
  out.representative_matrix =
      (-Eigen::MatrixXd::Identity(r, r) + t_bar.asDiagonal() * decomp.pbar_block) / tau;
  out.transverse_matrix =
      (-Eigen::MatrixXd::Identity(n - r, n - r) + theta.asDiagonal() * decomp.m_block) /
      tau;

  out.representative = jacobian_spectrum(ScaledAdjacency{qm.pbar, qm.dbar}, t_bar);
  for (double& e : out.representative.eigenvalues) e /= tau;
  const ScaledAdjacency sa = scaled_adjacency(g);
  Spectrum full = jacobian_spectrum(sa, t_full);
  for (double& e : full.eigenvalues) e /= tau;
  out.full_eigenvalues = full.eigenvalues;

  // Match each representative eigenvalue to its nearest unused partner.
  std::vector<double> rest = full.eigenvalues;
  for (double x : out.representative.eigenvalues) {
    auto best = std::min_element(rest.begin(), rest.end(), [&](double a, double b) {
      return std::abs(a - x) < std::abs(b - x);
    });
    out.matching_distance = std::max(out.matching_distance, std::abs(*best - x));
    rest.erase(best);
  }
  std::sort(rest.begin(), rest.end(), std::greater<>());
  out.transverse_eigenvalues = rest;

  // Power sums tie the derived eigenvalues to the transverse matrix itself.
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n - r, n - r);
  for (int k = 1; k <= 3 && n > r; ++k) {
    power = power * out.transverse_matrix;
    double sum = 0.0, scale = 1.0;
    for (double mu : rest) {
      sum += std::pow(mu, k);
      scale += std::pow(std::abs(mu), k);
    }
    out.trace_residual =
        std::max(out.trace_residual, std::abs(power.trace() - sum) / scale);
  }

  const Eigen::MatrixXd jac =
      (-Eigen::MatrixXd::Identity(n, n) + t_full.asDiagonal() * sa.p) / tau;
  const Eigen::MatrixXd tilde = decomp.t.fullPivLu().solve(jac * decomp.t);
  out.structure_residual =
      (tilde.topLeftCorner(r, r) - out.representative_matrix).cwiseAbs().maxCoeff();
  if (n > r) {
    out.structure_residual = std::max(
        {out.structure_residual, tilde.bottomLeftCorner(n - r, r).cwiseAbs().maxCoeff(),
         (tilde.bottomRightCorner(n - r, n - r) - out.transverse_matrix)
             .cwiseAbs()
             .maxCoeff()});
  }
  out.consistency =
      std::max({out.matching_distance, out.trace_residual, out.structure_residual});
  return out;
}

GainProfile gain_profile(const Partition& pi, const StaticMap& model,
                         const Eigen::VectorXd& z) {
  if (z.size() != pi.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "z length differs from class count");
  }
  GainProfile gp;
  gp.gamma_bar = z.unaryExpr([&](double v) { return dc_gain(model, v); });
  gp.gamma.resize(pi.n());
  for (int i = 0; i < pi.n(); ++i) gp.gamma(i) = gp.gamma_bar(pi.class_of()[i]);
  return gp;
}

bool is_nonsingular_m_matrix(const Eigen::MatrixXd& input) {
  const int n = static_cast<int>(input.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && input(i, j) > 0.0) return false;
  Eigen::MatrixXd a = input;
  const double floor = 1e-12 * std::max(1.0, input.cwiseAbs().maxCoeff());
  for (int k = 0; k < n; ++k) {
    // Pivot k is the ratio of consecutive leading principal minors.
    if (!(a(k, k) > floor)) return false;
    for (int i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= factor * a.row(k).tail(n - k);
    }
  }
  return true;
}

SmallGainReport small_gain(const WeightedGraph& g, const Partition& pi,
                           const StaticMap& model, const Eigen::VectorXd& z) {
  const QuotientModel qm = quotient(g, pi);
  const ScaledAdjacency sa = scaled_adjacency(g);
  SmallGainReport out;
  out.gains = gain_profile(pi, model, z);
  const PerronResult full = spectral_radius_nonneg(sa.p * out.gains.gamma.asDiagonal());
  const PerronResult reduced =
      spectral_radius_nonneg(qm.pbar * out.gains.gamma_bar.asDiagonal());
  out.rho_full = full.rho;
  out.rho_reduced = reduced.rho;
  out.perron_full = full.v;
  out.perron_reduced = reduced.v;
  out.verdict = out.rho_reduced < 1.0 - kMarginalBand ? SmallGainVerdict::kCertifiedStable
                                                       : SmallGainVerdict::kNotCertified;
  const int n = g.n();
  out.m_matrix = is_nonsingular_m_matrix(Eigen::MatrixXd::Identity(n, n) -
                                         out.gains.gamma.asDiagonal() * sa.p);
  return out;
}

StabilityMethod stability_method_from_name(std::string_view name) {
  if (name == "full") return StabilityMethod::kFull;
  if (name == "block") return StabilityMethod::kBlock;
  if (name == "smallgain") return StabilityMethod::kSmallGain;
  if (name == "all") return StabilityMethod::kAll;
  throw Error(ErrorCode::kParse, "unknown stability method '" + std::string(name) + "'");
}

StabilityReport analyze_stability(const WeightedGraph& g, const Partition& pi,
                                  const StaticMap& model, const Eigen::VectorXd& z,
                                  StabilityMethod method) {
  const bool all = method == StabilityMethod::kAll;
  StabilityReport report;
  if (all || method == StabilityMethod::kFull) {
    const PatternSolution lifted = lift(g, pi, z, model);
    report.full = full_jacobian_stability(g, model, lifted.u);
  }
  if (all || method == StabilityMethod::kBlock) {
    report.block = block_stability(g, block_decompose(g, pi), model, z);
  }
  if (all || method == StabilityMethod::kSmallGain) {
    report.small_gain = small_gain(g, pi, model, z);
  }
  return report;
}

}  // namespace patternq
