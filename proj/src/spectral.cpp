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

#include "patternq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "patternq/error.hpp"

namespace patternq {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kRotationThreshold = 1e-14;
constexpr int kMaxPowerIterations = 100000;

Spectrum sorted_spectrum(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });
  Spectrum s;
  s.eigenvectors.resize(vectors.rows(), n);
  for (int k = 0; k < n; ++k) {
    s.eigenvalues.push_back(values(order[k]));
    s.eigenvectors.col(k) = vectors.col(order[k]);
  }
  return s;
}

}  // namespace

int Spectrum::multiplicity(double value, double tol) const {
  return static_cast<int>(std::count_if(
      eigenvalues.begin(), eigenvalues.end(),
      [&](double e) { return std::abs(e - value) <= tol; }));
}

Spectrum sym_eigen(const Eigen::MatrixXd& input) {
  const int n = static_cast<int>(input.rows());
  if (input.cols() != n) {
    throw Error(ErrorCode::kNotSymmetric, "matrix is not square");
  }
  if (n == 0) return {};
  const double asym = (input - input.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  if (asym >= 1e-10) {
    throw Error(ErrorCode::kNotSymmetric, "||A - A^T|| = " + std::to_string(asym));
  }
  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() >= 1e-12 * scale) {
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorCode::kNoConvergence, "Jacobi did not converge in 100 sweeps");
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= kRotationThreshold * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return sorted_spectrum(a.diagonal(), v);
}

Spectrum eigen_reversible(const Eigen::MatrixXd& p, const Eigen::VectorXd& d) {
  const int n = static_cast<int>(p.rows());
  if (p.cols() != n || d.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "p and d sizes disagree");
  }
  if ((d.array() <= 0.0).any()) {
    throw Error(ErrorCode::kDetailedBalanceViolated, "weights must be positive");
  }
  const double tol = 1e-10 * std::max(1.0, d.maxCoeff());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(d(i) * p(i, j) - d(j) * p(j, i)) > tol) {
        throw Error(ErrorCode::kDetailedBalanceViolated,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  const Eigen::VectorXd root = d.cwiseSqrt();
  const Eigen::MatrixXd s = root.asDiagonal() * p * root.cwiseInverse().asDiagonal();
  Spectrum spec = sym_eigen(0.5 * (s + s.transpose()));
  spec.eigenvectors = root.cwiseInverse().asDiagonal() * spec.eigenvectors;
  for (int k = 0; k < n; ++k) {
    spec.eigenvectors.col(k).normalize();
  }
  if (n > 0 && spec.eigenvectors.col(0).sum() < 0.0) {
    spec.eigenvectors.col(0) *= -1.0;
  }
  return spec;
}

namespace {

bool strongly_connected(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  for (bool forward : {true, false}) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < n; ++u) {
        const double entry = forward ? m(v, u) : m(u, v);
        if (entry > 0.0 && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

}  // namespace

PerronResult spectral_radius_nonneg(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n || n == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square and nonempty");
  }
  if ((m.array() < 0.0).any()) {
    throw Error(ErrorCode::kNegativeEntry, "matrix has negative entries");
  }
  if (!strongly_connected(m)) {
    throw Error(ErrorCode::kReducible, "support graph is not strongly connected");
  }
  PerronResult out;
  out.v = Eigen::VectorXd::Ones(n);
  double width = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= kMaxPowerIterations; ++it) {
    const Eigen::VectorXd mv = m * out.v;
    // Collatz-Wielandt: min_i (Mv)_i / v_i <= rho <= max_i (Mv)_i / v_i.
    const Eigen::ArrayXd ratio = mv.array() / out.v.array();
    const double lo = ratio.minCoeff(), hi = ratio.maxCoeff();
    out.rho = 0.5 * (lo + hi);
    out.iterations = it;
    width = hi - lo;
    if (width <= 1e-12 * std::max(hi, std::numeric_limits<double>::min())) {
      return out;
    }
    // Shifting by the upper bound hi >= rho makes the Perron root strictly
    // dominant even for periodic matrices, whose spectrum contains
    // rho * exp(2 pi i k / period).
    const Eigen::VectorXd next = mv + hi * out.v;
    out.v = next / next.maxCoeff();
  }
  if (width <= 1e-10 * out.rho) return out;
  throw Error(ErrorCode::kNoConvergence, "power iteration stalled");
}

Spectrum jacobian_spectrum(const ScaledAdjacency& p, const Eigen::VectorXd& t) {
  const int n = static_cast<int>(p.p.rows());
  if (t.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "slope vector has wrong length");
  }
  if ((t.array() >= 0.0).any()) {
    throw Error(ErrorCode::kNonNegativeSlope, "all slopes must be negative");
  }
  const Eigen::VectorXd mag = t.cwiseAbs();
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // w_ij = d_i p_ij
      h(i, j) = -p.d(i) * p.p(i, j) * std::sqrt(mag(i) * mag(j) / (p.d(i) * p.d(j)));
    }
  }
  Spectrum spec = sym_eigen(0.5 * (h + h.transpose()));
  for (double& e : spec.eigenvalues) e -= 1.0;
  // Back to the coordinates of diag(t) P: S^{-1} w with S = diag(d/|t|)^{1/2}.
  const Eigen::VectorXd s_inv = (mag.array() / p.d.array()).sqrt();
  spec.eigenvectors = s_inv.asDiagonal() * spec.eigenvectors;
  for (int k = 0; k < n; ++k) spec.eigenvectors.col(k).normalize();
  return spec;
}

AbscissaEstimate jacobian_abscissa(const ScaledAdjacency& p, const Eigen::VectorXd& t) {
  if ((t.array() < 0.0).all()) {
    return {jacobian_spectrum(p, t).max(), false, std::nullopt};
  }
  const int n = static_cast<int>(p.p.rows());
  const Eigen::MatrixXd j =
      -Eigen::MatrixXd::Identity(n, n) + t.asDiagonal() * p.p;
  AbscissaEstimate out;
  out.approximate = true;
  out.abscissa = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double radius = j.row(i).cwiseAbs().sum() - std::abs(j(i, i));
    out.abscissa = std::max(out.abscissa, j(i, i) + radius);
  }
  // Shifted so every eigenvalue has nonnegative real part; the dominant one
  // is then usually the rightmost.
  const double shift = j.cwiseAbs().rowwise().sum().maxCoeff();
  const Eigen::MatrixXd b = j + shift * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  double rq = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Eigen::VectorXd bv = b * v;
    const double next = v.dot(bv);
    const double norm = bv.norm();
    if (norm == 0.0) break;
    v = bv / norm;
    if (std::abs(next - rq) <= 1e-13 * std::max(1.0, std::abs(next))) {
      rq = next;
      break;
    }
    rq = next;
  }
  out.estimate = rq - shift;
  return out;
}

double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double dist = 0.0;
  for (size_t k = 0; k < a.size(); ++k) dist = std::max(dist, std::abs(a[k] - b[k]));
  return dist;
}

std::optional<std::vector<double>> multiset_difference(
    const std::vector<double>& whole, const std::vector<double>& part, double tol) {
  std::vector<double> rest = whole;
  for (double x : part) {
    auto best = rest.end();
    for (auto it = rest.begin(); it != rest.end(); ++it) {
      if (best == rest.end() || std::abs(*it - x) < std::abs(*best - x)) best = it;
    }
    if (best == rest.end() || std::abs(*best - x) > tol) return std::nullopt;
    rest.erase(best);
  }
  std::sort(rest.begin(), rest.end(), std::greater<>());
  return rest;
}

}  // namespace patternq
