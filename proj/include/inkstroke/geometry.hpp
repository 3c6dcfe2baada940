#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "inkstroke/error.hpp"
#include "inkstroke/vec2.hpp"

namespace inkstroke::geometry {

/// Which side of the oriented medial axis a point lies on. Left is the
/// positive cross-product side (counter-clockwise of the tangent).
enum class Side { Left, Right, On };

inline double side_sign(Side s) { return s == Side::Left ? 1.0 : (s == Side::Right ? -1.0 : 0.0); }

struct BoundingBox {
  Vec2 min;
  Vec2 max;
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double short_side() const { return width() < height() ? width() : height(); }
};

double signed_area(std::span<const Vec2> polygon);
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
/// True when no two non-adjacent edges of the closed polygon touch.
bool is_simple_polygon(std::span<const Vec2> polygon);

/// A simple closed boundary with optional start/goal hints for the stroke.
/// Stored counter-clockwise; construction validates and reorients.
class ClosedRegion {
 public:
  static ClosedRegion create(std::vector<Vec2> boundary, std::optional<Vec2> start_hint = std::nullopt,
                             std::optional<Vec2> goal_hint = std::nullopt);

  const std::vector<Vec2>& boundary() const { return boundary_; }
  const std::optional<Vec2>& start_hint() const { return start_hint_; }
  const std::optional<Vec2>& goal_hint() const { return goal_hint_; }
  const BoundingBox& bounds() const { return bounds_; }
  double area() const { return signed_area(boundary_); }

  /// Strict interior test (crossing number); points on an edge may go either way.
  bool contains(Vec2 p) const;
  /// Euclidean distance from p to the boundary polyline.
  double boundary_distance(Vec2 p) const;
  /// Distance along the unit direction `dir` to the first boundary crossing, if any.
  std::optional<double> ray_hit(Vec2 origin, Vec2 dir) const;
  /// Both endpoints inside and the open segment crosses no edge.
  bool segment_inside(Vec2 a, Vec2 b) const;

 private:
  ClosedRegion() = default;

  std::vector<Vec2> boundary_;
  std::optional<Vec2> start_hint_;
  std::optional<Vec2> goal_hint_;
  BoundingBox bounds_;
};

struct AxisSample {
  Vec2 point;
  double arclen = 0.0;
  Vec2 tangent;
  double halfwidth = 0.0;
  /// Signed osculating radius; positive when the axis turns left (counter-clockwise),
  /// infinity on straight stretches.
  double curv_radius = std::numeric_limits<double>::infinity();
};

/// Values interpolated along the axis at some arc length.
struct AxisPoint {
  Vec2 point;
  double arclen = 0.0;
  Vec2 tangent;
  double halfwidth = 0.0;
  /// Signed curvature 1/r', zero on straight stretches.
  double curvature = 0.0;
};

/// Curvature magnitudes below this are treated as a straight axis.
inline constexpr double kStraightCurvature = 1e-4;

/// Sampled centerline running from the start point S to the goal point G.
/// Immutable once built; safe to share across concurrent rollouts.
class MedialAxis {
 public:
  MedialAxis(std::vector<AxisSample> samples, double resolution);

  const std::vector<AxisSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double total_length() const { return samples_.back().arclen; }
  double resolution() const { return resolution_; }
  const AxisSample& front() const { return samples_.front(); }
  const AxisSample& back() const { return samples_.back(); }

  /// Linear interpolation of the sample attributes; arclen is clamped to the axis.
  AxisPoint at(double arclen) const;

 private:
  std::vector<AxisSample> samples_;
  double resolution_;
};

struct CrossSection {
  Vec2 left;
  Vec2 right;
  Vec2 axis_point;
  double arclen = 0.0;
  double length() const { return distance(left, right); }
};

struct AxisProjection {
  Vec2 point;
  double arclen = 0.0;
  Vec2 tangent;
  Side side = Side::On;
  double distance = 0.0;
};

/// Default grid cell for compute_medial_axis: 1/100 of the bounding-box short side.
double default_resolution(const ClosedRegion& region);

/// Raster distance transform, ridge path S->G, end trimming, smoothing and
/// chord-midpoint refinement. Halfwidths are exact polygon distances.
MedialAxis compute_medial_axis(const ClosedRegion& region, double resolution);
inline MedialAxis compute_medial_axis(const ClosedRegion& region) {
  return compute_medial_axis(region, default_resolution(region));
}

AxisProjection nearest_axis_point(const MedialAxis& axis, Vec2 point);

/// Signed curvature feature in (-1, 1): magnitude (2/pi) atan(alpha / sqrt(r')),
/// negative on left-turning stretches, positive on right-turning ones, exactly 0
/// where the axis is straight.
double curvature_feature(const MedialAxis& axis, double arclen, double alpha = 0.05);
/// The same formula evaluated directly on a signed curvature 1/r'.
double curvature_feature_from_curvature(double signed_curvature, double alpha = 0.05);

/// Boundary-to-boundary segment through `origin` along +/- `normal`.
/// Throws SectionDegenerate when either ray misses within `max_reach`.
CrossSection section_through(const ClosedRegion& region, Vec2 origin, Vec2 normal, double max_reach);

/// Section perpendicular to the axis tangent at `arclen`.
CrossSection cross_section(const ClosedRegion& region, const MedialAxis& axis, double arclen);

}  // namespace inkstroke::geometry
