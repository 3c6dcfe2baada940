#include "inkstroke/brush.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace inkstroke::brush {

using geometry::ClosedRegion;
using geometry::MedialAxis;

Footprint make_footprint(Vec2 center, double radius, Vec2 tip) {
  Footprint f;
  f.center = center;
  f.radius = radius;
  f.tip = tip;
  f.heading = (tip - center).angle();
  return f;
}

Footprint translated(const Footprint& f, Vec2 center) {
  Footprint out = f;
  out.tip = f.tip + (center - f.center);
  out.center = center;
  return out;
}

std::pair<Vec2, Vec2> tip_tangent_points(const Footprint& f) {
  const Vec2 to_tip = f.tip - f.center;
  const double dist = to_tip.norm();
  if (dist <= f.radius) return {f.tip, f.tip};
  const double half_angle = std::acos(f.radius / dist);
  const Vec2 u = to_tip / dist;
  return {f.center + rotate(u, half_angle) * f.radius, f.center + rotate(u, -half_angle) * f.radius};
}

Silhouette::Silhouette(const Footprint& f) : center(f.center), r2(f.radius * f.radius), tip(f.tip) {
  std::tie(t1, t2) = tip_tangent_points(f);
}

bool Silhouette::contains(Vec2 p) const {
  if ((p - center).squared_norm() <= r2) return true;
  const double c1 = cross(t1 - tip, p - tip);
  const double c2 = cross(t2 - t1, p - t1);
  const double c3 = cross(tip - t2, p - t2);
  const bool has_neg = c1 < 0 || c2 < 0 || c3 < 0;
  const bool has_pos = c1 > 0 || c2 > 0 || c3 > 0;
  return !(has_neg && has_pos) && (has_neg || has_pos);
}

bool footprint_contains(const Footprint& f, Vec2 p) { return Silhouette(f).contains(p); }

// ---------------------------------------------------------------------------

GridFrame coverage_frame(const ClosedRegion& region, double cell) {
  const auto& box = region.bounds();
  constexpr int pad = 2;
  GridFrame frame;
  frame.cell = cell;
  frame.origin = box.min - Vec2{pad * cell, pad * cell};
  frame.nx = static_cast<int>(std::ceil(box.width() / cell)) + 2 * pad;
  frame.ny = static_cast<int>(std::ceil(box.height() / cell)) + 2 * pad;
  return frame;
}

namespace {

template <typename Fn>
void for_each_footprint_cell(const GridFrame& frame, const Footprint& f, Fn&& fn) {
  const Silhouette shape(f);
  const double r = f.radius;
  const double minx = std::min(f.center.x - r, f.tip.x);
  const double maxx = std::max(f.center.x + r, f.tip.x);
  const double miny = std::min(f.center.y - r, f.tip.y);
  const double maxy = std::max(f.center.y + r, f.tip.y);
  const int i0 = std::max(0, frame.column_of(minx));
  const int i1 = std::min(frame.nx - 1, frame.column_of(maxx));
  const int j0 = std::max(0, frame.row_of(miny));
  const int j1 = std::min(frame.ny - 1, frame.row_of(maxy));
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Vec2 c = frame.center(i, j);
      if (shape.contains(c)) fn(frame.index(i, j), c);
    }
  }
}

}  // namespace

int predecessor_label(const GridFrame& frame, const Footprint& prev, const Footprint& next, double eta) {
  const Silhouette before(prev);
  std::size_t total = 0;
  std::size_t fresh = 0;
  for_each_footprint_cell(frame, next, [&](std::size_t, Vec2 c) {
    ++total;
    if (!before.contains(c)) ++fresh;
  });
  if (total == 0) return 0;
  return static_cast<double>(fresh) >= eta * static_cast<double>(total) ? 1 : 0;
}

CoverageMask::CoverageMask(const ClosedRegion& region, double cell)
    : frame_(coverage_frame(region, cell)), cells_(frame_.size(), 0) {}

template <typename Fn>
void CoverageMask::for_each_cell(const Footprint& f, Fn&& fn) const {
  for_each_footprint_cell(frame_, f, [&](std::size_t k, Vec2) { fn(k); });
}

CoverageMask::Count CoverageMask::probe(const Footprint& f) const {
  Count c;
  for_each_cell(f, [&](std::size_t k) {
    ++c.total;
    if (!cells_[k]) ++c.fresh;
  });
  return c;
}

CoverageMask::Count CoverageMask::stamp(const Footprint& f) {
  Count c;
  for_each_cell(f, [&](std::size_t k) {
    ++c.total;
    if (!cells_[k]) {
      ++c.fresh;
      cells_[k] = 1;
    }
  });
  covered_ += c.fresh;
  return c;
}

int CoverageMask::stamp_label(const Footprint& f, double eta) {
  const Count c = stamp(f);
  if (c.total == 0) return 0;
  return static_cast<double>(c.fresh) >= eta * static_cast<double>(c.total) ? 1 : 0;
}

// ---------------------------------------------------------------------------

std::optional<Footprint> fit_posture(const ClosedRegion& region, const MedialAxis& axis, Vec2 center,
                                     const BrushParams& params) {
  if (!region.contains(center)) throw Error(ErrorCode::OutsideRegion, "footprint center lies outside the region");
  const geometry::AxisProjection p = geometry::nearest_axis_point(axis, center);
  const double local = std::max(axis.at(p.arclen).halfwidth, axis.resolution());
  geometry::CrossSection cs;
  try {
    cs = geometry::section_through(region, center, p.tangent.perp(), 10.0 * local);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SectionDegenerate) return std::nullopt;
    throw;
  }
  const double to_left = distance(center, cs.left);
  const double to_right = distance(center, cs.right);
  // disc touches the nearer wall, tip the farther one (ties put the tip right)
  const bool left_nearer = to_left <= to_right;
  const double r = left_nearer ? to_left : to_right;
  if (r < params.r_min_cells * axis.resolution()) return std::nullopt;
  return make_footprint(center, r, left_nearer ? cs.right : cs.left);
}

BrushState initial_state(const ClosedRegion& region, const MedialAxis& axis, const BrushParams& params) {
  const geometry::AxisSample& s = axis.front();
  BrushState st;
  st.velocity_dir = wrap_angle(s.tangent.angle());
  if (auto f = fit_posture(region, axis, s.point, params)) {
    st.footprint = *f;
  } else {
    const double r = std::max(s.halfwidth, params.r_min_cells * axis.resolution());
    st.footprint = make_footprint(s.point, r, s.point - s.tangent.perp() * r);
  }
  return st;
}

StepResult step(const ClosedRegion& region, const MedialAxis& axis, const BrushState& state, double action,
                CoverageMask& coverage, const BrushParams& params) {
  const Footprint& f = state.footprint;
  const geometry::AxisProjection p = geometry::nearest_axis_point(axis, f.center);
  const Vec2 dir = rotate(p.tangent, action);
  const Vec2 target = f.center + dir * (params.beta * f.radius);

  StepResult out;
  out.next = state;
  out.next.velocity_dir = wrap_angle(dir.angle());
  out.next.step_index = state.step_index + 1;
  if (!region.segment_inside(f.center, target)) {
    out.blocked = true;
    out.l = 0;
    return out;
  }
  const std::optional<Footprint> fitted = fit_posture(region, axis, target, params);
  out.next.footprint = fitted ? *fitted : translated(f, target);
  out.l = coverage.stamp_label(out.next.footprint, params.eta);
  return out;
}

}  // namespace inkstroke::brush
