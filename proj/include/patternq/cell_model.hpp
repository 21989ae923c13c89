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

#ifndef PATTERNQ_CELL_MODEL_HPP_
#define PATTERNQ_CELL_MODEL_HPP_

#include <memory>

namespace patternq {

/// A cell seen through its static input-output map T = h o S. The shipped
/// realization is the one-state cell  x' = (-x + T(u)) / tau,  y = x, so the
/// steady-state map S coincides with T.
///
/// Implementations must be positive, bounded by bound(), strictly decreasing
/// on u >= 0 and continuously differentiable.
class StaticMap {
 public:
  virtual ~StaticMap() = default;

  virtual double value(double u) const = 0;
  virtual double slope(double u) const = 0;
  /// Supremum of value(); the box [0, bound()] is forward invariant.
  virtual double bound() const = 0;
  virtual double tau() const = 0;
};

/// T(u) = A / (1 + (u/K)^h).
class HillMap final : public StaticMap {
 public:
  /// Throws kBadModel unless A > 0, K > 0, h >= 1, tau > 0.
  HillMap(double amplitude, double threshold, double exponent, double tau = 1.0);

  double value(double u) const override;
  double slope(double u) const override;
  double bound() const override { return amplitude_; }
  double tau() const override { return tau_; }

  double amplitude() const { return amplitude_; }
  double threshold() const { return threshold_; }
  double exponent() const { return exponent_; }

 private:
  double amplitude_;
  double threshold_;
  double exponent_;
  double tau_;
};

/// T(u); throws kNegativeInput for u < 0.
double t_eval(const StaticMap& m, double u);
/// T'(u); throws kNegativeInput for u < 0.
double t_prime(const StaticMap& m, double u);

struct FixedPoint {
  double u_star = 0.0;
  double residual = 0.0;
};

/// Unique root of T(u) = u on (0, bound()) by bisection.
FixedPoint fixed_point(const StaticMap& m);

/// Right-hand side of the one-state cell.
double cell_rhs(const StaticMap& m, double x, double u);

/// -T'(z): the static gain of the linearized cell at input z, which for the
/// first-order cell is also its L2-gain. Throws kNonpositiveOperatingPoint.
double dc_gain(const StaticMap& m, double z);

}  // namespace patternq

#endif  // PATTERNQ_CELL_MODEL_HPP_
