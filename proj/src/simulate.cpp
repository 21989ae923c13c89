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

#include "patternq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "patternq/error.hpp"

namespace patternq {

namespace {

// Neighbor terms are summed in sorted order, so cells seeing the same
// multiset of weighted inputs get bit-identical inputs.
void rhs(const WeightedGraph& g, const StaticMap& m, const Eigen::VectorXd& x,
         Eigen::VectorXd& out, std::vector<double>& terms, std::vector<double>& degrees) {
  const double inv_tau = 1.0 / m.tau();
  for (int i = 0; i < g.n(); ++i) {
    terms.clear();
    degrees.clear();
    for (const auto& [j, w] : g.neighbors(i)) {
      terms.push_back(w * x(j));
      degrees.push_back(w);
    }
    std::sort(terms.begin(), terms.end());
    std::sort(degrees.begin(), degrees.end());
    const double u = std::accumulate(terms.begin(), terms.end(), 0.0);
    const double d = std::accumulate(degrees.begin(), degrees.end(), 0.0);
    out(i) = (-x(i) + m.value(std::max(u / d, 0.0))) * inv_tau;
  }
}

}  // namespace

SimulationTrace integrate(const WeightedGraph& g, const StaticMap& model,
                          const Eigen::VectorXd& x0, const SimulationOptions& opts) {
  const int n = g.n();
  const double upper = model.bound();
  if (!(opts.step > 0.0) || !(opts.max_time > 0.0) || !(opts.conv_tol > 0.0) ||
      opts.max_samples < 2) {
    throw Error(ErrorCode::kBadOptions, "step, max_time, conv_tol must be positive");
  }
  if (x0.size() != n) {
    throw Error(ErrorCode::kBadOptions, "x0 has wrong length");
  }
  if ((x0.array() < 0.0).any() || (x0.array() > upper).any()) {
    throw Error(ErrorCode::kBadOptions, "x0 must lie in [0, A]");
  }
  const double h = opts.step * model.tau();
  const double t_end = opts.max_time * model.tau();
  const double slack = 1e-9 * upper;

  SimulationTrace trace;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<double> terms, degrees;
  long stride = 1;
  long step = 0;
  double t = 0.0;
  while (true) {
    rhs(g, model, x, k1, terms, degrees);
    const double speed = k1.lpNorm<Eigen::Infinity>();
    if (step % stride == 0) {
      trace.times.push_back(t);
      trace.states.push_back(x);
      if (trace.times.size() > opts.max_samples) {
        // Halve the sampling density.
        size_t keep = 0;
        for (size_t k = 0; k < trace.times.size(); k += 2, ++keep) {
          trace.times[keep] = trace.times[k];
          trace.states[keep] = std::move(trace.states[k]);
        }
        trace.times.resize(keep);
        trace.states.resize(keep);
        stride *= 2;
      }
    }
    trace.final_derivative_norm = speed;
    if (speed < opts.conv_tol) {
      trace.converged = true;
      break;
    }
    if (t >= t_end) break;
    tmp = x + 0.5 * h * k1;
    rhs(g, model, tmp, k2, terms, degrees);
    tmp = x + 0.5 * h * k2;
    rhs(g, model, tmp, k3, terms, degrees);
    tmp = x + h * k3;
    rhs(g, model, tmp, k4, terms, degrees);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ++step;
    t = step * h;
    if (!x.allFinite() || (x.array() < -slack).any() || (x.array() > upper + slack).any()) {
      throw Error(ErrorCode::kStateOutOfBox,
                  "state left [0, A] at t = " + std::to_string(t) +
                      "; reduce the step");
    }
    if (opts.observer) opts.observer(t, x);
  }
  if (trace.times.empty() || trace.times.back() != t) {
    trace.times.push_back(t);
    trace.states.push_back(x);
  }
  trace.final_state = x;
  trace.final_time = t;
  return trace;
}

Eigen::VectorXd perturbed_start(double u_hom, const Eigen::VectorXd& direction,
                                double eps, double upper) {
  const double scale = direction.lpNorm<Eigen::Infinity>();
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kBadOptions, "perturbation direction is zero");
  }
  Eigen::VectorXd x =
      Eigen::VectorXd::Constant(direction.size(), u_hom) + (eps / scale) * direction;
  return x.cwiseMax(0.0).cwiseMin(upper);
}

Partition EmpiricalPattern::as_partition(int n) const {
  return Partition::from_classes(n, groups);
}

EmpiricalPattern classify(const SimulationTrace& trace, double cluster_tol) {
  if (!trace.converged) {
    throw Error(ErrorCode::kNotConverged, "trace did not reach a steady state");
  }
  const Eigen::VectorXd& x = trace.final_state;
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x(a) > x(b); });
  EmpiricalPattern out;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || x(order[k - 1]) - x(order[k]) > cluster_tol) out.groups.emplace_back();
    out.groups.back().push_back(order[k]);
  }
  for (auto& group : out.groups) {
    std::sort(group.begin(), group.end());
    double mean = 0.0;
    for (int v : group) mean += x(v);
    out.values.push_back(mean / group.size());
  }
  return out;
}

VerificationReport verify_certificate(const WeightedGraph& g, const Partition& pi,
                                      const StaticMap& model,
                                      const PatternSolution& pattern, double eps,
                                      const SimulationOptions& opts) {
  const QuotientModel qm = quotient(g, pi);
  const ExistenceCertificate cert = certify(qm, model);
  VerificationReport report;
  report.certified = cert.verdict == ExistenceVerdict::kCertified;
  report.note = report.certified ? "certified pattern"
                                 : "no certificate; simulation exploratory only";

  Eigen::VectorXd direction(g.n());
  for (int i = 0; i < g.n(); ++i) direction(i) = cert.v_r(pi.class_of()[i]);
  if (pattern.side < 0) direction = -direction;
  const Eigen::VectorXd x0 = perturbed_start(cert.u_star, direction, eps, model.bound());
  report.trace = integrate(g, model, x0, opts);
  if (!report.trace.converged) {
    report.note += "; simulation did not converge";
    return report;
  }
  report.observed = classify(report.trace, 1e-4 * model.bound());
  report.match = report.observed.as_partition(g.n()) == pi;

  const ScaledAdjacency sa = scaled_adjacency(g);
  const Eigen::VectorXd u_final = sa.p * report.trace.final_state;
  std::vector<Eigen::VectorXd> roots = {pattern.z};
  roots.insert(roots.end(), pattern.alternatives.begin(), pattern.alternatives.end());
  report.max_deviation = std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& z : roots) {
    if (z.size() != pi.size()) continue;
    double dev = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      dev = std::max(dev, std::abs(u_final(i) - z(pi.class_of()[i])));
    }
    report.max_deviation = std::min(report.max_deviation, dev);
  }
  return report;
}

}  // namespace patternq
