#include "inkstroke/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <utility>

#include "inkstroke/raster.hpp"

namespace inkstroke {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRegion: return "InvalidRegion";
    case ErrorCode::RegionTooThin: return "RegionTooThin";
    case ErrorCode::DisconnectedAxis: return "DisconnectedAxis";
    case ErrorCode::SectionDegenerate: return "SectionDegenerate";
    case ErrorCode::OutsideRegion: return "OutsideRegion";
    case ErrorCode::SelfIntersecting: return "SelfIntersecting";
    case ErrorCode::IncompatibleJoint: return "IncompatibleJoint";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace inkstroke

namespace inkstroke::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

std::vector<Vec2> without_duplicates(std::vector<Vec2> pts) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) {
    if (out.empty() || distance(out.back(), p) > 0.0) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) == 0.0) out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Medial axis helpers

// Felzenszwalb-Huttenlocher squared distance transform along one line.
// `f` uses a large finite value for "no seed".
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  auto parabola_cut = [&](int q, int p) {
    return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
  };
  for (int q = 1; q < n; ++q) {
    double s = parabola_cut(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = parabola_cut(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    d[q] = (double(q) - v[k]) * (double(q) - v[k]) + f[v[k]];
  }
}

// Squared distance (in cells) from every cell to the nearest outside cell.
std::vector<double> squared_distance_to_outside(const GridFrame& g, const std::vector<unsigned char>& inside) {
  std::vector<double> grid(g.size());
  constexpr double kFar = 1e20;  // every line crosses the padded outside border
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = inside[k] ? kFar : 0.0;
  const int longest = std::max(g.nx, g.ny);
  std::vector<double> f(longest), d(longest), z(longest + 1);
  std::vector<int> v(longest);
  f.resize(g.ny);
  d.resize(g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) f[j] = grid[g.index(i, j)];
    edt_1d(f, d, v, z);
    for (int j = 0; j < g.ny; ++j) grid[g.index(i, j)] = d[j];
  }
  f.resize(g.nx);
  d.resize(g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) f[i] = grid[g.index(i, j)];
    edt_1d(f, d, v, z);
    for (int i = 0; i < g.nx; ++i) grid[g.index(i, j)] = d[i];
  }
  return grid;
}

struct PathSearch {
  std::vector<double> cost;
  std::vector<int> parent;
};

// 8-connected Dijkstra over inside cells. `weight(cell)` scales the step length
// of edges entering that cell.
template <typename Weight>
PathSearch dijkstra(const GridFrame& g, const std::vector<unsigned char>& inside, std::size_t source, Weight weight) {
  PathSearch out{std::vector<double>(g.size(), kInf), std::vector<int>(g.size(), -1)};
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  out.cost[source] = 0.0;
  open.emplace(0.0, source);
  constexpr int di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  constexpr int dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!open.empty()) {
    const auto [c, u] = open.top();
    open.pop();
    if (c > out.cost[u]) continue;
    const int ui = static_cast<int>(u % static_cast<std::size_t>(g.nx));
    const int uj = static_cast<int>(u / static_cast<std::size_t>(g.nx));
    for (int k = 0; k < 8; ++k) {
      const int vi = ui + di[k];
      const int vj = uj + dj[k];
      if (!g.in_bounds(vi, vj)) continue;
      const std::size_t vcell = g.index(vi, vj);
      if (!inside[vcell]) continue;
      const double len = k < 4 ? 1.0 : std::numbers::sqrt2;
      const double nc = c + len * weight(vcell);
      if (nc < out.cost[vcell]) {
        out.cost[vcell] = nc;
        out.parent[vcell] = static_cast<int>(u);
        open.emplace(nc, vcell);
      }
    }
  }
  return out;
}

std::size_t farthest_cell(const std::vector<double>& cost) {
  std::size_t best = 0;
  double best_cost = -1.0;
  for (std::size_t k = 0; k < cost.size(); ++k) {
    if (cost[k] < kInf && cost[k] > best_cost) {
      best_cost = cost[k];
      best = k;
    }
  }
  return best;
}

std::size_t nearest_inside_cell(const GridFrame& g, const std::vector<unsigned char>& inside, Vec2 p) {
  std::size_t best = 0;
  double best_d = kInf;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (!inside[k]) continue;
      const double d = (g.center(i, j) - p).squared_norm();
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
  }
  return best;
}

double polyline_length(const std::vector<Vec2>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

std::vector<Vec2> resample_uniform(const std::vector<Vec2>& pts, double spacing) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  const double total = cum.back();
  const std::size_t n = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(total / spacing)) + 1);
  std::vector<Vec2> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < pts.size() && cum[seg + 1] < s) ++seg;
    const double span = cum[seg + 1] - cum[seg];
    const double t = span > 0.0 ? std::clamp((s - cum[seg]) / span, 0.0, 1.0) : 0.0;
    out.push_back(lerp(pts[seg], pts[seg + 1], t));
  }
  return out;
}

// Centered moving average; the window shrinks symmetrically near the ends so
// the endpoints stay fixed.
std::vector<Vec2> moving_average(const std::vector<Vec2>& pts, int window) {
  const int n = static_cast<int>(pts.size());
  const int half = window / 2;
  std::vector<Vec2> out(pts.size());
  for (int i = 0; i < n; ++i) {
    const int h = std::min({half, i, n - 1 - i});
    Vec2 acc;
    for (int k = i - h; k <= i + h; ++k) acc += pts[k];
    out[i] = acc / static_cast<double>(2 * h + 1);
  }
  return out;
}

std::vector<Vec2> tangents_of(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<Vec2> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i == 0 ? 0 : i - 1];
    const Vec2 b = pts[i + 1 == n ? n - 1 : i + 1];
    t[i] = (b - a).normalized();
  }
  return t;
}

// Drops leading samples whose inscribed disc is (up to `tol`) contained in the
// disc of a sample further along: the overshoot of a raster ridge into round
// caps and sharp corners.
std::size_t leading_trim(const std::vector<Vec2>& pts, const std::vector<double>& h, double tol) {
  const std::size_t n = pts.size();
  std::size_t i = 0;
  while (i + 4 < n) {
    bool contained = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = distance(pts[i], pts[j]);
      if (dij > 20.0 * tol) break;
      if (dij > 2.0 * tol && dij + h[i] <= h[j] + tol) {
        contained = true;
        break;
      }
    }
    if (!contained) break;
    ++i;
  }
  return i;
}

// Signed curvature of the circle through a, b, c (positive for a left turn).
double circumcircle_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ca = distance(c, a);
  const double denom = ab * bc * ca;
  if (denom <= 0.0) return 0.0;
  return 2.0 * cross(b - a, c - a) / denom;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polygon primitives

double signed_area(std::span<const Vec2> polygon) {
  double acc = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * acc;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = orient(c, d, a);
  const double d2 = orient(c, d, b);
  const double d3 = orient(a, b, c);
  const double d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool is_simple_polygon(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    // cheap bounding-box rejection keeps this usable for ~1e3 vertices
    const double minx = std::min(a.x, b.x), maxx = std::max(a.x, b.x);
    const double miny = std::min(a.y, b.y), maxy = std::max(a.y, b.y);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Vec2 c = polygon[j];
      const Vec2 d = polygon[(j + 1) % n];
      if (std::max(c.x, d.x) < minx || std::min(c.x, d.x) > maxx || std::max(c.y, d.y) < miny ||
          std::min(c.y, d.y) > maxy) {
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

ClosedRegion ClosedRegion::create(std::vector<Vec2> boundary, std::optional<Vec2> start_hint,
                                  std::optional<Vec2> goal_hint) {
  ClosedRegion r;
  r.boundary_ = without_duplicates(std::move(boundary));
  if (r.boundary_.size() < 3) throw Error(ErrorCode::InvalidRegion, "boundary needs at least 3 distinct vertices");
  for (const Vec2& p : r.boundary_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorCode::InvalidRegion, "non-finite vertex");
  }
  const double area = signed_area(r.boundary_);
  if (area == 0.0) throw Error(ErrorCode::InvalidRegion, "boundary has zero area");
  if (area < 0.0) std::reverse(r.boundary_.begin(), r.boundary_.end());
  if (!is_simple_polygon(r.boundary_)) throw Error(ErrorCode::InvalidRegion, "boundary self-intersects");

  r.bounds_ = {r.boundary_.front(), r.boundary_.front()};
  for (const Vec2& p : r.boundary_) {
    r.bounds_.min = {std::min(r.bounds_.min.x, p.x), std::min(r.bounds_.min.y, p.y)};
    r.bounds_.max = {std::max(r.bounds_.max.x, p.x), std::max(r.bounds_.max.y, p.y)};
  }
  const double on_tol = 1e-9 * std::max(r.bounds_.width(), r.bounds_.height());
  auto check_hint = [&](const std::optional<Vec2>& hint, const char* name) {
    if (hint && !r.contains(*hint) && r.boundary_distance(*hint) > on_tol) {
      std::ostringstream msg;
      msg << name << " hint (" << hint->x << ", " << hint->y << ") lies outside the boundary";
      throw Error(ErrorCode::InvalidRegion, msg.str());
    }
  };
  check_hint(start_hint, "start");
  check_hint(goal_hint, "goal");
  r.start_hint_ = start_hint;
  r.goal_hint_ = goal_hint;
  return r;
}

bool ClosedRegion::contains(Vec2 p) const {
  bool in = false;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = boundary_[i];
    const Vec2 b = boundary_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x) in = !in;
    }
  }
  return in;
}

double ClosedRegion::boundary_distance(Vec2 p) const {
  double best = kInf;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 q = closest_on_segment(p, boundary_[i], boundary_[(i + 1) % n]);
    best = std::min(best, (p - q).squared_norm());
  }
  return std::sqrt(best);
}

std::optional<double> ClosedRegion::ray_hit(Vec2 origin, Vec2 dir) const {
  std::optional<double> best;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = boundary_[i];
    const Vec2 e = boundary_[(i + 1) % n] - a;
    const double denom = cross(dir, e);
    if (std::abs(denom) < 1e-300) continue;
    const Vec2 ao = a - origin;
    const double t = cross(ao, e) / denom;
    const double u = cross(ao, dir) / denom;
    if (t > 1e-12 && u >= 0.0 && u <= 1.0 && (!best || t < *best)) best = t;
  }
  return best;
}

bool ClosedRegion::segment_inside(Vec2 a, Vec2 b) const {
  if (!contains(a) || !contains(b)) return false;
  const std::size_t n = boundary_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, boundary_[i], boundary_[(i + 1) % n])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Medial axis

MedialAxis::MedialAxis(std::vector<AxisSample> samples, double resolution)
    : samples_(std::move(samples)), resolution_(resolution) {
  if (samples_.size() < 2) throw Error(ErrorCode::RegionTooThin, "medial axis needs at least two samples");
}

AxisPoint MedialAxis::at(double arclen) const {
  const double s = std::clamp(arclen, 0.0, total_length());
  auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                             [](double v, const AxisSample& a) { return v < a.arclen; });
  std::size_t hi = static_cast<std::size_t>(it - samples_.begin());
  if (hi >= samples_.size()) hi = samples_.size() - 1;
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  const AxisSample& a = samples_[lo];
  const AxisSample& b = samples_[hi];
  const double span = b.arclen - a.arclen;
  const double t = span > 0.0 ? std::clamp((s - a.arclen) / span, 0.0, 1.0) : 0.0;
  auto curvature = [](double radius) { return std::isinf(radius) ? 0.0 : 1.0 / radius; };
  AxisPoint p;
  p.point = lerp(a.point, b.point, t);
  p.arclen = s;
  p.tangent = lerp(a.tangent, b.tangent, t).normalized();
  if (p.tangent.squared_norm() == 0.0) p.tangent = (b.point - a.point).normalized();
  p.halfwidth = a.halfwidth + (b.halfwidth - a.halfwidth) * t;
  p.curvature = curvature(a.curv_radius) + (curvature(b.curv_radius) - curvature(a.curv_radius)) * t;
  if (std::abs(p.curvature) < kStraightCurvature) p.curvature = 0.0;
  return p;
}

double default_resolution(const ClosedRegion& region) { return region.bounds().short_side() / 100.0; }

MedialAxis compute_medial_axis(const ClosedRegion& region, double resolution) {
  const BoundingBox& box = region.bounds();
  if (!(resolution > 0.0) || resolution > box.short_side() / 20.0 * (1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidConfig, "resolution must be positive and at most 1/20 of the bounding-box short side");
  }
  constexpr int pad = 2;
  GridFrame g;
  g.cell = resolution;
  g.origin = box.min - Vec2{pad * resolution, pad * resolution};
  g.nx = static_cast<int>(std::ceil(box.width() / resolution)) + 2 * pad;
  g.ny = static_cast<int>(std::ceil(box.height() / resolution)) + 2 * pad;
  const std::vector<unsigned char> inside = scanline_fill(g, region.boundary());

  const std::vector<double> d2 = squared_distance_to_outside(g, inside);
  double max_d2 = 0.0;
  std::size_t deepest = 0;
  for (std::size_t k = 0; k < d2.size(); ++k) {
    if (inside[k] && d2[k] > max_d2) {
      max_d2 = d2[k];
      deepest = k;
    }
  }
  if (max_d2 == 0.0) throw Error(ErrorCode::RegionTooThin, "no grid cell lies inside the region");

  // S and G: hint cells when given, otherwise the geodesic diameter of the raster.
  std::size_t s_cell = 0;
  std::size_t g_cell = 0;
  auto unit = [](std::size_t) { return 1.0; };
  if (region.start_hint()) {
    s_cell = nearest_inside_cell(g, inside, *region.start_hint());
  } else {
    const std::size_t probe = region.goal_hint() ? nearest_inside_cell(g, inside, *region.goal_hint()) : deepest;
    s_cell = farthest_cell(dijkstra(g, inside, probe, unit).cost);
  }
  if (region.goal_hint()) {
    g_cell = nearest_inside_cell(g, inside, *region.goal_hint());
  } else {
    g_cell = farthest_cell(dijkstra(g, inside, s_cell, unit).cost);
  }

  if (!region.start_hint() && !region.goal_hint()) {
    // no hints: run the axis from the lexicographically smaller end (x, then y)
    const Vec2 a = g.center(static_cast<int>(s_cell % g.nx), static_cast<int>(s_cell / g.nx));
    const Vec2 b = g.center(static_cast<int>(g_cell % g.nx), static_cast<int>(g_cell / g.nx));
    if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(s_cell, g_cell);
  }

  // Ridge-following path: steps into shallow cells are expensive.
  const double max_dist = std::sqrt(max_d2);
  const PathSearch ridge = dijkstra(g, inside, s_cell, [&](std::size_t cell) {
    const double r = max_dist / std::sqrt(d2[cell]);
    return r * r;
  });
  if (!(ridge.cost[g_cell] < kInf) || s_cell == g_cell) {
    throw Error(ErrorCode::DisconnectedAxis, "no ridge path connects the start and goal cells");
  }
  std::vector<Vec2> pts;
  for (int c = static_cast<int>(g_cell); c != -1; c = ridge.parent[static_cast<std::size_t>(c)]) {
    const int i = c % g.nx;
    const int j = c / g.nx;
    pts.push_back(g.center(i, j));
  }
  std::reverse(pts.begin(), pts.end());

  std::vector<double> h(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) h[k] = region.boundary_distance(pts[k]);
  const std::size_t head = leading_trim(pts, h, resolution);
  std::vector<Vec2> rpts(pts.rbegin(), pts.rend());
  std::vector<double> rh(h.rbegin(), h.rend());
  const std::size_t tail = leading_trim(rpts, rh, resolution);
  if (head + tail + 4 > pts.size()) {
    throw Error(ErrorCode::RegionTooThin, "medial axis collapses to fewer than 4 samples");
  }
  pts = std::vector<Vec2>(pts.begin() + static_cast<std::ptrdiff_t>(head),
                          pts.end() - static_cast<std::ptrdiff_t>(tail));
  if (polyline_length(pts) < 3.0 * resolution) {
    throw Error(ErrorCode::RegionTooThin, "medial axis shorter than three grid cells");
  }

  const double spacing = 2.0 * resolution;
  pts = moving_average(pts, 5);
  for (int round = 0; round < 3; ++round) {
    pts = resample_uniform(pts, spacing);
    const std::vector<Vec2> tang = tangents_of(pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Vec2 n = tang[k].perp();
      const auto left = region.ray_hit(pts[k], n);
      const auto right = region.ray_hit(pts[k], -n);
      if (!left || !right || !region.contains(pts[k])) continue;
      const double hk = region.boundary_distance(pts[k]);
      const double shift = 0.5 * (*left - *right);
      // reject chords that jump across to a distant part of the shape
      if (std::abs(shift) <= 0.5 * hk + resolution && *left + *right <= 4.0 * hk + 2.0 * resolution) {
        pts[k] += n * shift;
      }
    }
    pts = moving_average(pts, 5);
  }
  pts = resample_uniform(pts, spacing);

  const std::vector<Vec2> tang = tangents_of(pts);
  std::vector<AxisSample> samples(pts.size());
  double arclen = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0) arclen += distance(pts[k - 1], pts[k]);
    samples[k].point = pts[k];
    samples[k].arclen = arclen;
    samples[k].tangent = tang[k];
    samples[k].halfwidth = region.boundary_distance(pts[k]);
    if (!region.contains(pts[k]) || !(samples[k].halfwidth > 0.0)) {
      throw Error(ErrorCode::RegionTooThin, "smoothed axis left the region");
    }
  }
  // 3-sample circumscribed circle over a stride of 2 samples.
  const std::size_t n = pts.size();
  std::vector<double> curv(n, 0.0);
  if (n >= 5) {
    for (std::size_t k = 2; k + 2 < n; ++k) curv[k] = circumcircle_curvature(pts[k - 2], pts[k], pts[k + 2]);
    curv[0] = curv[1] = curv[2];
    curv[n - 1] = curv[n - 2] = curv[n - 3];
  } else {
    const double c = circumcircle_curvature(pts.front(), pts[n / 2], pts.back());
    std::fill(curv.begin(), curv.end(), c);
  }
  for (std::size_t k = 0; k < n; ++k) {
    samples[k].curv_radius = std::abs(curv[k]) < kStraightCurvature ? kInf : 1.0 / curv[k];
  }
  return MedialAxis(std::move(samples), resolution);
}

AxisProjection nearest_axis_point(const MedialAxis& axis, Vec2 point) {
  const auto& s = axis.samples();
  AxisProjection best;
  double best_d2 = kInf;
  std::size_t best_seg = 0;
  double best_t = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double t = 0.0;
    const Vec2 q = closest_on_segment(point, s[i].point, s[i + 1].point, &t);
    const double d2 = (point - q).squared_norm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best_seg = i;
      best_t = t;
      best.point = q;
    }
  }
  const AxisSample& a = s[best_seg];
  const AxisSample& b = s[best_seg + 1];
  best.arclen = a.arclen + (b.arclen - a.arclen) * best_t;
  best.tangent = lerp(a.tangent, b.tangent, best_t).normalized();
  best.distance = std::sqrt(best_d2);
  const Vec2 seg_dir = (b.point - a.point).normalized();
  // on a segment interior the offset is perpendicular to the segment itself
  const Vec2 ref = (best_t > 0.0 && best_t < 1.0) ? seg_dir : best.tangent;
  const double c = cross(ref, point - best.point);
  if (best.distance <= 1e-12 * std::max(1.0, axis.total_length()) || c == 0.0) {
    best.side = Side::On;
  } else {
    best.side = c > 0.0 ? Side::Left : Side::Right;
  }
  return best;
}

double curvature_feature_from_curvature(double signed_curvature, double alpha) {
  const double k = std::abs(signed_curvature);
  if (k < kStraightCurvature) return 0.0;
  // |kappa| = (2/pi) atan(alpha / sqrt(r')) with r' = 1/|k|
  const double magnitude = 2.0 / std::numbers::pi * std::atan(alpha * std::sqrt(k));
  // left-turning axis (positive geometric curvature) gives a negative feature
  return signed_curvature > 0.0 ? -magnitude : magnitude;
}

double curvature_feature(const MedialAxis& axis, double arclen, double alpha) {
  return curvature_feature_from_curvature(axis.at(arclen).curvature, alpha);
}

CrossSection section_through(const ClosedRegion& region, Vec2 origin, Vec2 normal, double max_reach) {
  const Vec2 n = normal.normalized();
  const auto left = region.ray_hit(origin, n);
  const auto right = region.ray_hit(origin, -n);
  if (!left || !right || *left > max_reach || *right > max_reach) {
    throw Error(ErrorCode::SectionDegenerate, "section ray does not reach the boundary");
  }
  CrossSection cs;
  cs.left = origin + n * *left;
  cs.right = origin - n * *right;
  cs.axis_point = origin;
  return cs;
}

CrossSection cross_section(const ClosedRegion& region, const MedialAxis& axis, double arclen) {
  const AxisPoint p = axis.at(arclen);
  const double local = std::max(region.boundary_distance(p.point), axis.resolution());
  CrossSection cs = section_through(region, p.point, p.tangent.perp(), 10.0 * local);
  cs.arclen = p.arclen;
  return cs;
}

}  // namespace inkstroke::geometry
