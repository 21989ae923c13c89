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

#include "patternq/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "icosahedron.hpp"
#include "patternq/error.hpp"

namespace patternq {

namespace {

Permutation lattice_map(const LatticeSpec& spec, auto&& f) {
  const int rows = spec.rows, cols = spec.cols;
  Permutation perm(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto [r2, c2] = f(r, c);
      r2 = ((r2 % rows) + rows) % rows;
      c2 = ((c2 % cols) + cols) % cols;
      perm[r * cols + c] = r2 * cols + c2;
    }
  }
  return perm;
}

internal::Vec3 rotate(const internal::Vec3& v, internal::Vec3 axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  for (double& a : axis) a /= len;
  const double c = std::cos(angle), s = std::sin(angle);
  const double dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
  const internal::Vec3 cross = {axis[1] * v[2] - axis[2] * v[1],
                                axis[2] * v[0] - axis[0] * v[2],
                                axis[0] * v[1] - axis[1] * v[0]};
  internal::Vec3 out;
  for (int k = 0; k < 3; ++k) out[k] = v[k] * c + cross[k] * s + axis[k] * dot * (1 - c);
  return out;
}

// Lifts an isometry of the icosahedron to the 32 faces of the buckyball.
Permutation buckyball_symmetry(auto&& isometry) {
  const auto ico = internal::icosahedron_vertices();
  const auto faces = internal::icosahedron_faces();
  std::array<int, 12> vmap{};
  for (int a = 0; a < 12; ++a) {
    const internal::Vec3 image = isometry(ico[a]);
    for (int b = 0; b < 12; ++b) {
      if (internal::squared_distance(image, ico[b]) < 1e-12) vmap[a] = b;
    }
  }
  Permutation perm(32);
  for (int a = 0; a < 12; ++a) perm[a] = vmap[a];
  for (int f = 0; f < 20; ++f) {
    std::array<int, 3> image = {vmap[faces[f][0]], vmap[faces[f][1]], vmap[faces[f][2]]};
    std::sort(image.begin(), image.end());
    const auto it = std::find(faces.begin(), faces.end(), image);
    perm[12 + f] = 12 + static_cast<int>(it - faces.begin());
  }
  return perm;
}

std::vector<Permutation> buckyball_generators() {
  const auto ico = internal::icosahedron_vertices();
  const auto faces = internal::icosahedron_faces();
  internal::Vec3 centroid{};
  for (int v : faces[0])
    for (int k = 0; k < 3; ++k) centroid[k] += ico[v][k] / 3.0;
  const double pi = std::numbers::pi;
  return {
      buckyball_symmetry([&](const internal::Vec3& v) { return rotate(v, ico[0], 2 * pi / 5); }),
      buckyball_symmetry([&](const internal::Vec3& v) { return rotate(v, centroid, 2 * pi / 3); }),
  };
}

CatalogEntry from_generators(std::string name, LatticeSpec spec,
                             std::vector<Permutation> gens, std::string description) {
  const WeightedGraph g = generate(spec);
  Partition pi = orbits_from_generators(g, gens);
  return {std::move(name), spec, std::move(gens), std::move(pi), std::move(description)};
}

std::vector<CatalogEntry> build_catalog() {
  const LatticeSpec mesh{LatticeKind::kTorusMesh, 0, 4, 4};
  const LatticeSpec hex{LatticeKind::kHexTorus, 0, 6, 6};
  auto shift = [](const LatticeSpec& s, int dr, int dc) {
    return lattice_translation(s, dr, dc);
  };
  auto negate = [](const LatticeSpec& s) {
    return lattice_map(s, [](int r, int c) { return std::pair(-r, -c); });
  };

  std::vector<CatalogEntry> out;
  out.push_back(from_generators("bipartite_torus", mesh, {shift(mesh, 0, 2), shift(mesh, 1, 1)},
                                "4x4 torus checkerboard (two-coloring)"));
  out.push_back(from_generators(
      "mesh_b", mesh,
      {shift(mesh, 0, 2), shift(mesh, 2, 1),
       lattice_map(mesh, [](int r, int c) { return std::pair(1 - r, c); })},
      "4x4 torus, pairs of rows offset by one column"));
  out.push_back(from_generators("hex_a", hex, {shift(hex, 1, 1), shift(hex, 0, 3), negate(hex)},
                                "6x6 hex torus, one third of the cells isolated"));
  out.push_back(from_generators("hex_b", hex, {shift(hex, 0, 1), shift(hex, 2, 0)},
                                "6x6 hex torus, alternating rows"));
  out.push_back(from_generators("hex_c", hex, {shift(hex, 0, 1), shift(hex, 3, 0), negate(hex)},
                                "6x6 hex torus, every third row"));
  out.push_back(from_generators("hex_d", hex, {shift(hex, 1, 0), shift(hex, 0, 3), negate(hex)},
                                "6x6 hex torus, every third column"));
  out.push_back(from_generators("hex_e", hex, {shift(hex, 1, 0), shift(hex, 0, 2)},
                                "6x6 hex torus, alternating columns"));
  out.push_back(from_generators("pent_hex", LatticeSpec{LatticeKind::kBuckyball},
                                buckyball_generators(),
                                "buckyball, pentagonal versus hexagonal faces"));
  out.push_back({"fig5", LatticeSpec{LatticeKind::kFig5}, {},
                 Partition::from_classes(8, {{2, 5}, {0, 1, 3, 4, 6, 7}}),
                 "8-vertex graph, equitable but neither bipartite nor an orbit partition"});
  out.push_back({"path4_bipartite", LatticeSpec{LatticeKind::kPath, 4}, {},
                 Partition::from_classes(4, {{0, 2}, {1, 3}}),
                 "path of 4, two-coloring (not an orbit partition)"});
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::kParse, "unknown catalog entry '" + std::string(name) + "'");
}

Permutation lattice_translation(const LatticeSpec& spec, int dr, int dc) {
  if (spec.kind != LatticeKind::kTorusMesh && spec.kind != LatticeKind::kHexTorus) {
    throw Error(ErrorCode::kBadLatticeSize, "translations need a torus lattice");
  }
  return lattice_map(spec, [=](int r, int c) { return std::pair(r + dr, c + dc); });
}

std::vector<Permutation> lattice_automorphisms(const LatticeSpec& spec) {
  std::vector<Permutation> out;
  switch (spec.kind) {
    case LatticeKind::kPath: {
      Permutation rev(spec.n);
      for (int i = 0; i < spec.n; ++i) rev[i] = spec.n - 1 - i;
      out.push_back(rev);
      break;
    }
    case LatticeKind::kCycle:
      for (int k : {1, 2, 3}) {
        Permutation rot(spec.n);
        for (int i = 0; i < spec.n; ++i) rot[i] = (i + k) % spec.n;
        out.push_back(rot);
      }
      {
        Permutation refl(spec.n);
        for (int i = 0; i < spec.n; ++i) refl[i] = (spec.n - i) % spec.n;
        out.push_back(refl);
      }
      break;
    case LatticeKind::kTorusMesh:
    case LatticeKind::kHexTorus: {
      for (auto [dr, dc] : {std::pair(1, 0), std::pair(0, 1), std::pair(2, 0), std::pair(0, 2),
                            std::pair(1, 1), std::pair(2, 1), std::pair(1, 2), std::pair(3, 0),
                            std::pair(0, 3)}) {
        out.push_back(lattice_translation(spec, dr, dc));
      }
      out.push_back(lattice_map(spec, [](int r, int c) { return std::pair(-r, -c); }));
      if (spec.kind == LatticeKind::kTorusMesh) {
        out.push_back(lattice_map(spec, [](int r, int c) { return std::pair(-r, c); }));
        out.push_back(lattice_map(spec, [](int r, int c) { return std::pair(r, -c); }));
        out.push_back(lattice_map(spec, [](int r, int c) { return std::pair(1 - r, c); }));
      }
      if (spec.rows == spec.cols) {
        out.push_back(lattice_map(spec, [](int r, int c) { return std::pair(c, r); }));
      }
      break;
    }
    case LatticeKind::kBuckyball:
      out = buckyball_generators();
      out.push_back(buckyball_symmetry([](const internal::Vec3& v) {
        return internal::Vec3{-v[0], -v[1], -v[2]};
      }));
      break;
    case LatticeKind::kFig5:
      // Swaps inside each end triangle, and the end-to-end reflection.
      out.push_back({1, 0, 2, 3, 4, 5, 6, 7});
      out.push_back({0, 1, 2, 3, 4, 5, 7, 6});
      out.push_back({7, 6, 5, 4, 3, 2, 1, 0});
      break;
  }
  return out;
}

}  // namespace patternq
