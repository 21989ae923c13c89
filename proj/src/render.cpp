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

#include "patternq/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "patternq/error.hpp"

namespace patternq {
namespace {

constexpr int kBuckyCells = 32;
constexpr int kBuckyPentagons = 12;

char glyph(int rank) {
  static constexpr std::string_view kGlyphs = "#.o+x*=%";
  return rank < static_cast<int>(kGlyphs.size()) ? kGlyphs[rank] : '?';
}

std::string fill(int rank) {
  if (rank == 0) return "#555555";
  if (rank == 1) return "#ffffff";
  const int level = std::min(230, 120 + 25 * (rank - 1));
  return fmt::format("#{0:02x}{0:02x}{0:02x}", level);
}

std::string polygon(const std::vector<std::pair<double, double>>& pts, int rank) {
  std::string out = "  <polygon points=\"";
  for (size_t k = 0; k < pts.size(); ++k) {
    out += fmt::format("{}{:.2f},{:.2f}", k ? " " : "", pts[k].first, pts[k].second);
  }
  out += fmt::format("\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"1\"/>\n", fill(rank));
  return out;
}

std::vector<std::pair<double, double>> regular(double cx, double cy, double radius,
                                               int sides, double phase) {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < sides; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / sides;
    pts.emplace_back(cx + radius * std::cos(a), cy + radius * std::sin(a));
  }
  return pts;
}

}  // namespace

Layout layout_from_name(std::string_view name) {
  if (name == "torus") return Layout::kTorus;
  if (name == "hex") return Layout::kHex;
  if (name == "bucky") return Layout::kBucky;
  throw Error(ErrorCode::kParse, fmt::format("unknown layout '{}'", name));
}

Layout layout_for(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::kTorusMesh:
      return Layout::kTorus;
    case LatticeKind::kHexTorus:
      return Layout::kHex;
    case LatticeKind::kBuckyball:
      return Layout::kBucky;
    default:
      throw Error(ErrorCode::kBadIndex,
                  fmt::format("no layout for {}", lattice_kind_name(kind)));
  }
}

LayoutGrid resolve_grid(Layout layout, int n, int rows, int cols) {
  LayoutGrid grid{layout, rows, cols};
  if (layout == Layout::kBucky) {
    if (n != kBuckyCells) {
      throw Error(ErrorCode::kBadLatticeSize, fmt::format("bucky layout needs 32 cells, got {}", n));
    }
    return grid;
  }
  if (rows == 0 && cols == 0) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    grid.rows = grid.cols = side;
  } else if (rows == 0) {
    grid.rows = cols > 0 ? n / cols : 0;
  } else if (cols == 0) {
    grid.cols = n / rows;
  }
  if (grid.rows <= 0 || grid.cols <= 0 || grid.rows * grid.cols != n) {
    throw Error(ErrorCode::kBadLatticeSize,
                fmt::format("{} cells do not fill a {}x{} grid", n, grid.rows, grid.cols));
  }
  return grid;
}

std::string render_ascii(const LayoutGrid& grid, const std::vector<int>& group) {
  std::ostringstream out;
  if (grid.layout == Layout::kBucky) {
    out << "pentagons ";
    for (int v = 0; v < kBuckyPentagons; ++v) out << glyph(group[v]);
    out << "\nhexagons  ";
    for (int v = kBuckyPentagons; v < kBuckyCells; ++v) out << glyph(group[v]);
    out << "\n";
    return out.str();
  }
  for (int r = 0; r < grid.rows; ++r) {
    if (grid.layout == Layout::kHex) out << std::string(r, ' ');
    for (int c = 0; c < grid.cols; ++c) {
      if (c) out << ' ';
      out << glyph(group[r * grid.cols + c]);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_svg(const LayoutGrid& grid, const std::vector<int>& group) {
  constexpr double kCell = 24.0;
  constexpr double kMargin = 8.0;
  std::string body;
  double width = 0.0;
  double height = 0.0;
  switch (grid.layout) {
    case Layout::kTorus:
      for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
          const double x = kMargin + c * kCell;
          const double y = kMargin + r * kCell;
          body += polygon({{x, y}, {x + kCell, y}, {x + kCell, y + kCell}, {x, y + kCell}},
                          group[r * grid.cols + c]);
        }
      }
      width = 2 * kMargin + grid.cols * kCell;
      height = 2 * kMargin + grid.rows * kCell;
      break;
    case Layout::kHex: {
      const double radius = kCell / std::sqrt(3.0);
      for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
          const double cx = kMargin + kCell / 2 + kCell * (c + 0.5 * r);
          const double cy = kMargin + radius + 1.5 * radius * r;
          body += polygon(regular(cx, cy, radius, 6, std::numbers::pi / 6),
                          group[r * grid.cols + c]);
        }
      }
      width = 2 * kMargin + kCell * (grid.cols + 0.5 * (grid.rows - 1));
      height = 2 * kMargin + radius * (2 + 1.5 * (grid.rows - 1));
      break;
    }
    case Layout::kBucky: {
      const double center = kMargin + 6 * kCell;
      for (int v = 0; v < kBuckyCells; ++v) {
        const bool pent = v < kBuckyPentagons;
        const int slot = pent ? v : v - kBuckyPentagons;
        const int count = pent ? kBuckyPentagons : kBuckyCells - kBuckyPentagons;
        const double ring = pent ? 2.2 * kCell : 5.0 * kCell;
        const double a = 2.0 * std::numbers::pi * slot / count;
        body += polygon(regular(center + ring * std::cos(a), center + ring * std::sin(a),
                                kCell / 2, pent ? 5 : 6, -std::numbers::pi / 2),
                        group[v]);
      }
      width = height = 2 * center;
      break;
    }
  }
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\">\n{}</svg>\n",
      std::ceil(width), std::ceil(height), body);
}

std::vector<int> group_ranks(const std::vector<double>& values, double gap) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  std::vector<int> rank(values.size(), 0);
  int current = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && values[order[k - 1]] - values[order[k]] > gap) ++current;
    rank[order[k]] = current;
  }
  return rank;
}

}  // namespace patternq
