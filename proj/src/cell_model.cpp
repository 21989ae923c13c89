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

#include "patternq/cell_model.hpp"

#include <cmath>
#include <string>

#include "patternq/error.hpp"

namespace patternq {

HillMap::HillMap(double amplitude, double threshold, double exponent, double tau)
    : amplitude_(amplitude), threshold_(threshold), exponent_(exponent), tau_(tau) {
  if (!(amplitude > 0.0) || !(threshold > 0.0) || !(exponent >= 1.0) ||
      !(tau > 0.0) || !std::isfinite(amplitude) || !std::isfinite(threshold) ||
      !std::isfinite(exponent) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kBadModel,
                "Hill map needs A > 0, K > 0, h >= 1, tau > 0 (got A=" +
                    std::to_string(amplitude) + " K=" + std::to_string(threshold) +
                    " h=" + std::to_string(exponent) + " tau=" + std::to_string(tau) +
                    ")");
  }
}

double HillMap::value(double u) const {
  return amplitude_ / (1.0 + std::pow(u / threshold_, exponent_));
}

double HillMap::slope(double u) const {
  const double s = u / threshold_;
  const double denom = 1.0 + std::pow(s, exponent_);
  return -(amplitude_ * exponent_ / threshold_) * std::pow(s, exponent_ - 1.0) /
         (denom * denom);
}

double t_eval(const StaticMap& m, double u) {
  if (u < 0.0) throw Error(ErrorCode::kNegativeInput, std::to_string(u));
  return m.value(u);
}

double t_prime(const StaticMap& m, double u) {
  if (u < 0.0) throw Error(ErrorCode::kNegativeInput, std::to_string(u));
  return m.slope(u);
}

FixedPoint fixed_point(const StaticMap& m) {
  // T(0) - 0 > 0 and T(A) - A < 0, with T(u) - u strictly decreasing.
  double lo = 0.0, hi = m.bound();
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = m.value(mid) - mid;
    if (f == 0.0) {
      lo = hi = mid;
      break;
    }
    (f > 0.0 ? lo : hi) = mid;
  }
  const double ulo = std::abs(m.value(lo) - lo);
  const double uhi = std::abs(m.value(hi) - hi);
  const double u = ulo <= uhi ? lo : hi;
  return {u, std::abs(m.value(u) - u)};
}

double cell_rhs(const StaticMap& m, double x, double u) {
  return (-x + m.value(u)) / m.tau();
}

double dc_gain(const StaticMap& m, double z) {
  if (!(z > 0.0)) {
    throw Error(ErrorCode::kNonpositiveOperatingPoint, std::to_string(z));
  }
  return -m.slope(z);
}

}  // namespace patternq
