#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "inkstroke/vec2.hpp"

namespace inkstroke {

/// Axis-aligned cell lattice: cell (i, j) covers [origin + i*cell, origin + (i+1)*cell).
struct GridFrame {
  Vec2 origin;
  double cell = 1.0;
  int nx = 0;
  int ny = 0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  bool in_bounds(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
  Vec2 center(int i, int j) const {
    return {origin.x + (i + 0.5) * cell, origin.y + (j + 0.5) * cell};
  }
  int column_of(double x) const { return static_cast<int>(std::floor((x - origin.x) / cell)); }
  int row_of(double y) const { return static_cast<int>(std::floor((y - origin.y) / cell)); }
};

/// Marks cells whose centers fall inside the closed polygon (even-odd scanline fill).
inline std::vector<unsigned char> scanline_fill(const GridFrame& frame, const std::vector<Vec2>& polygon) {
  std::vector<unsigned char> mask(frame.size(), 0);
  std::vector<double> xs;
  const std::size_t n = polygon.size();
  for (int j = 0; j < frame.ny; ++j) {
    const double y = frame.origin.y + (j + 0.5) * frame.cell;
    xs.clear();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 a = polygon[k];
      const Vec2 b = polygon[(k + 1) % n];
      if ((a.y <= y && y < b.y) || (b.y <= y && y < a.y)) {
        xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // centers x_c = origin + (i + 0.5) * cell with xs[k] <= x_c < xs[k+1]
      const int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - frame.origin.x) / frame.cell - 0.5)));
      const int i1 = std::min(frame.nx - 1,
                              static_cast<int>(std::ceil((xs[k + 1] - frame.origin.x) / frame.cell - 0.5)) - 1);
      for (int i = i0; i <= i1; ++i) mask[frame.index(i, j)] = 1;
    }
  }
  return mask;
}

}  // namespace inkstroke
