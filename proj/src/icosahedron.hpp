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

// Icosahedron geometry shared by the buckyball generator and its symmetry
// generators. Faces of the truncated icosahedron are the 12 vertices
// (pentagons) and 20 triangles (hexagons) of the icosahedron.

#ifndef PATTERNQ_SRC_ICOSAHEDRON_HPP_
#define PATTERNQ_SRC_ICOSAHEDRON_HPP_

#include <array>
#include <cmath>
#include <vector>

namespace patternq::internal {

using Vec3 = std::array<double, 3>;

inline std::array<Vec3, 12> icosahedron_vertices() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return {{
      {0, 1, phi}, {0, 1, -phi}, {0, -1, phi}, {0, -1, -phi},
      {1, phi, 0}, {1, -phi, 0}, {-1, phi, 0}, {-1, -phi, 0},
      {phi, 0, 1}, {phi, 0, -1}, {-phi, 0, 1}, {-phi, 0, -1},
  }};
}

inline double squared_distance(const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

/// Triangles (a < b < c) in lexicographic order.
inline std::vector<std::array<int, 3>> icosahedron_faces() {
  const auto ico = icosahedron_vertices();
  auto adjacent = [&](int a, int b) {
    return std::abs(squared_distance(ico[a], ico[b]) - 4.0) < 1e-9;  // edge length 2
  };
  std::vector<std::array<int, 3>> faces;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c)
        if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) faces.push_back({a, b, c});
  return faces;
}

}  // namespace patternq::internal

#endif  // PATTERNQ_SRC_ICOSAHEDRON_HPP_
