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

#include "patternq/existence.hpp"

#include <algorithm>
#include <cmath>

#include "patternq/error.hpp"
#include "patternq/spectral.hpp"

namespace patternq {

namespace {

constexpr double kPerturbation = 0.1;      // start offset, relative to u*
constexpr double kNonhomogeneous = 1e-6;   // spread threshold, relative to u*
constexpr double kRootTol = 1e-10;
constexpr int kMaxNewtonIterations = 100;
constexpr int kMaxHalvings = 40;
constexpr double kOdeStep = 0.01;
constexpr long kMaxOdeSteps = 10'000'000;
constexpr double kOdeStop = 1e-11;

Eigen::VectorXd apply_map(const StaticMap& m, const Eigen::VectorXd& z) {
  return z.unaryExpr([&](double v) { return m.value(v); });
}

Eigen::VectorXd reduced_residual(const Eigen::MatrixXd& pbar, const StaticMap& m,
                                 const Eigen::VectorXd& z) {
  return z - pbar * apply_map(m, z);
}

bool is_homogeneous(const Eigen::VectorXd& z, double u_star) {
  return z.maxCoeff() - z.minCoeff() <= kNonhomogeneous * u_star;
}

// Damped Newton on G(z) = z - P̄ T(z).
std::optional<Eigen::VectorXd> newton(const Eigen::MatrixXd& pbar, const StaticMap& m,
                                      Eigen::VectorXd z) {
  const int r = static_cast<int>(z.size());
  Eigen::VectorXd g = reduced_residual(pbar, m, z);
  double norm = g.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < kMaxNewtonIterations && norm > 1e-14; ++it) {
    const Eigen::VectorXd slopes = z.unaryExpr([&](double v) { return m.slope(v); });
    const Eigen::MatrixXd jac =
        Eigen::MatrixXd::Identity(r, r) - pbar * slopes.asDiagonal();
    const Eigen::VectorXd step = jac.partialPivLu().solve(g);
    if (!step.allFinite()) return std::nullopt;
    double alpha = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, alpha *= 0.5) {
      const Eigen::VectorXd trial = z - alpha * step;
      if ((trial.array() < 0.0).any()) continue;
      const Eigen::VectorXd gt = reduced_residual(pbar, m, trial);
      const double nt = gt.lpNorm<Eigen::Infinity>();
      if (nt < norm) {
        z = trial;
        g = gt;
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (norm < kRootTol) return z;
  return std::nullopt;
}

// RK4 on z' = -z + P̄ T(z) until ||z'|| < kOdeStop.
std::optional<Eigen::VectorXd> integrate_reduced(
    const Eigen::MatrixXd& pbar, const StaticMap& m, Eigen::VectorXd z,
    const std::function<void(long, double)>& progress) {
  auto f = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return -v + pbar * apply_map(m, v.cwiseMax(0.0));
  };
  const double h = kOdeStep;
  for (long step = 0; step < kMaxOdeSteps; ++step) {
    const Eigen::VectorXd k1 = f(z);
    const double speed = k1.lpNorm<Eigen::Infinity>();
    if (speed < kOdeStop) return z;
    if (progress && step % 10000 == 0) progress(step, speed);
    const Eigen::VectorXd k2 = f(z + 0.5 * h * k1);
    const Eigen::VectorXd k3 = f(z + 0.5 * h * k2);
    const Eigen::VectorXd k4 = f(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return std::nullopt;
}

Eigen::VectorXd start_point(double u_star, const Eigen::VectorXd& v_r, int sign,
                            double upper) {
  const Eigen::VectorXd dir = v_r / v_r.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd z = Eigen::VectorXd::Constant(v_r.size(), u_star) +
                      sign * kPerturbation * u_star * dir;
  return z.cwiseMax(0.0).cwiseMin(upper);
}

bool lexicographically_greater(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int k = 0; k < a.size(); ++k) {
    if (std::abs(a(k) - b(k)) > 1e-9) return a(k) > b(k);
  }
  return false;
}

}  // namespace

std::string_view verdict_name(ExistenceVerdict v) {
  switch (v) {
    case ExistenceVerdict::kCertified: return "CERTIFIED";
    case ExistenceVerdict::kInconclusive: return "INCONCLUSIVE";
    case ExistenceVerdict::kAssumptionFailed: return "ASSUMPTION_FAILED";
  }
  return "?";
}

std::string_view strategy_name(SolveStrategy s) {
  return s == SolveStrategy::kNewton ? "newton" : "ode";
}

SolveStrategy strategy_from_name(std::string_view name) {
  if (name == "newton") return SolveStrategy::kNewton;
  if (name == "ode") return SolveStrategy::kOde;
  throw Error(ErrorCode::kParse, "unknown strategy '" + std::string(name) + "'");
}

ExistenceCertificate certify(const QuotientModel& quotient, const StaticMap& model) {
  ExistenceCertificate cert;
  cert.u_star = fixed_point(model).u_star;
  cert.t_prime_star = model.slope(cert.u_star);
  const Spectrum spec = eigen_reversible(quotient.pbar, quotient.dbar);
  cert.quotient_eigenvalues = spec.eigenvalues;
  cert.lambda_r = spec.min();
  cert.lambda_r_multiplicity = spec.multiplicity(cert.lambda_r);
  cert.v_r = spec.eigenvectors.col(spec.eigenvectors.cols() - 1);
  cert.condition_value = std::abs(cert.t_prime_star) * cert.lambda_r;
  cert.assumption1 = quotient.reduced_coloring.has_value();
  if (!cert.assumption1) {
    cert.verdict = ExistenceVerdict::kAssumptionFailed;
  } else if (cert.condition_value < -1.0 - kCertifyMargin) {
    cert.verdict = ExistenceVerdict::kCertified;
  } else {
    cert.verdict = ExistenceVerdict::kInconclusive;
  }
  return cert;
}

bool auxiliary_cooperative(const QuotientModel& quotient, const StaticMap& model) {
  if (!quotient.reduced_coloring) return false;
  const int r = static_cast<int>(quotient.pbar.rows());
  const double u_star = fixed_point(model).u_star;
  Eigen::VectorXd sign(r);
  for (int i = 0; i < r; ++i) sign(i) = (*quotient.reduced_coloring)[i] == 0 ? 1.0 : -1.0;
  const Eigen::MatrixXd df =
      -Eigen::MatrixXd::Identity(r, r) + model.slope(u_star) * quotient.pbar;
  const Eigen::MatrixXd j = sign.asDiagonal() * df * sign.asDiagonal();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b && j(a, b) < 0.0) return false;
  return true;
}

PatternSolution solve_reduced(const QuotientModel& quotient, const StaticMap& model,
                              const SolveOptions& options) {
  const ExistenceCertificate cert = certify(quotient, model);
  const int r = static_cast<int>(quotient.pbar.rows());
  const double u_star = cert.u_star;

  PatternSolution sol;
  if (cert.verdict != ExistenceVerdict::kCertified) {
    sol.z = Eigen::VectorXd::Constant(r, u_star);
    sol.residual_reduced =
        reduced_residual(quotient.pbar, model, sol.z).lpNorm<Eigen::Infinity>();
    sol.homogeneous = true;
    sol.strategy_used = "none";
    sol.warning = "existence not certified (" +
                  std::string(verdict_name(cert.verdict)) +
                  "); returning the homogeneous fixed point";
    return sol;
  }

  struct Root {
    Eigen::VectorXd z;
    int side;
  };
  std::vector<Root> roots;
  auto record = [&](const Eigen::VectorXd& z, int side) {
    if (is_homogeneous(z, u_star)) return;
    for (const Root& known : roots) {
      if ((known.z - z).lpNorm<Eigen::Infinity>() < 1e-8) return;
    }
    roots.push_back({z, side});
  };

  if (options.strategy == SolveStrategy::kNewton) {
    for (int side : {1, -1}) {
      if (auto z = newton(quotient.pbar, model,
                          start_point(u_star, cert.v_r, side, model.bound()))) {
        record(*z, side);
      }
    }
    sol.strategy_used = "newton";
  }
  if (roots.empty()) {
    if (!auxiliary_cooperative(quotient, model)) {
      throw Error(ErrorCode::kOnlyHomogeneousFound,
                  "auxiliary system is not cooperative; ODE fallback unavailable");
    }
    bool any_converged = false;
    for (int side : {1, -1}) {
      auto z = integrate_reduced(quotient.pbar, model,
                                 start_point(u_star, cert.v_r, side, model.bound()),
                                 options.progress);
      if (!z) continue;
      any_converged = true;
      // Polish; keep the integrated value if Newton wanders off.
      auto polished = newton(quotient.pbar, model, *z);
      record(polished ? *polished : *z, side);
    }
    if (!any_converged) {
      throw Error(ErrorCode::kNoConvergence, "reduced ODE did not settle");
    }
    sol.strategy_used = options.strategy == SolveStrategy::kNewton ? "newton+ode" : "ode";
  }
  if (roots.empty()) {
    throw Error(ErrorCode::kOnlyHomogeneousFound,
                "every start converged to the homogeneous state u*");
  }

  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    return lexicographically_greater(a.z, b.z);
  });
  sol.z = roots.front().z;
  sol.side = roots.front().side;
  for (size_t k = 1; k < roots.size(); ++k) sol.alternatives.push_back(roots[k].z);
  sol.residual_reduced =
      reduced_residual(quotient.pbar, model, sol.z).lpNorm<Eigen::Infinity>();
  sol.homogeneous = false;
  return sol;
}

double full_residual(const WeightedGraph& g, const Eigen::VectorXd& u,
                     const StaticMap& model) {
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double d = g.degree(i);
    double avg = 0.0;
    for (const auto& [j, w] : g.neighbors(i)) avg += w / d * model.value(u(j));
    worst = std::max(worst, std::abs(u(i) - avg));
  }
  return worst;
}

PatternSolution lift(const WeightedGraph& g, const Partition& pi,
                     const Eigen::VectorXd& z, const StaticMap& model) {
  if (pi.n() != g.n() || z.size() != pi.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "z has " + std::to_string(z.size()) + " entries for " +
                    std::to_string(pi.size()) + " classes");
  }
  const QuotientModel qm = quotient(g, pi);
  PatternSolution sol;
  sol.z = z;
  sol.residual_reduced = reduced_residual(qm.pbar, model, z).lpNorm<Eigen::Infinity>();
  sol.homogeneous = is_homogeneous(z, fixed_point(model).u_star);
  sol.u.resize(g.n());
  for (int i = 0; i < g.n(); ++i) sol.u(i) = z(pi.class_of()[i]);
  sol.x = apply_map(model, sol.u);
  sol.residual_full = full_residual(g, sol.u, model);
  return sol;
}

PatternSolution lift(const WeightedGraph& g, const Partition& pi,
                     const PatternSolution& solution, const StaticMap& model) {
  PatternSolution out = lift(g, pi, solution.z, model);
  out.side = solution.side;
  out.alternatives = solution.alternatives;
  out.strategy_used = solution.strategy_used;
  out.warning = solution.warning;
  return out;
}

}  // namespace patternq
