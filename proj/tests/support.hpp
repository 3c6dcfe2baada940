#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "inkstroke/geometry.hpp"
#include "inkstroke/shapes.hpp"
#include "inkstroke/training.hpp"

namespace testing_support {

using inkstroke::Vec2;
using inkstroke::geometry::ClosedRegion;

inline ClosedRegion rectangle(double w, double h) { return ClosedRegion::create({{0, 0}, {w, 0}, {w, h}, {0, h}}); }

inline inkstroke::training::TrainingShape rectangle_shape(double w = 10.0, double h = 2.0) {
  return inkstroke::training::prepare_shape("rectangle", rectangle(w, h));
}

inline inkstroke::training::TrainingShape preset_shape(const std::string& id) {
  return inkstroke::training::prepare_shape(id, inkstroke::shapes::generate_shape(inkstroke::shapes::preset(id)));
}

/// Closest point on the axis polyline by exhaustive scan of every segment
/// subdivided `refine` times.
inline double brute_force_axis_distance(const inkstroke::geometry::MedialAxis& axis, Vec2 p, int refine = 10) {
  double best = INFINITY;
  const auto& s = axis.samples();
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    for (int q = 0; q <= refine; ++q) {
      const Vec2 x = inkstroke::lerp(s[k].point, s[k + 1].point, static_cast<double>(q) / refine);
      best = std::min(best, inkstroke::distance(x, p));
    }
  }
  return best;
}

/// Exact distance from p to the polygon's edges.
inline double polygon_distance(const std::vector<Vec2>& poly, Vec2 p) {
  double best = INFINITY;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec2 c = inkstroke::closest_on_segment(p, poly[k], poly[(k + 1) % poly.size()], nullptr);
    best = std::min(best, inkstroke::distance(c, p));
  }
  return best;
}

}  // namespace testing_support
