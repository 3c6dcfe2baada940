#include "inkstroke/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace inkstroke::render {

using brush::Footprint;

namespace {

// Fixed three-decimal pixel coordinates keep the documents byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string pt(const Canvas& c, Vec2 p) {
  const Vec2 q = c.to_pixel(p);
  return num(q.x) + ' ' + num(q.y);
}

std::string gray_hex(double ink) {
  const int g = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(ink, 0.0, 1.0))));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
  return buf;
}

geometry::BoundingBox footprint_extent(std::span<const Footprint> fs) {
  geometry::BoundingBox box{{fs[0].center.x, fs[0].center.y}, {fs[0].center.x, fs[0].center.y}};
  for (const Footprint& f : fs) {
    box.min.x = std::min({box.min.x, f.center.x - f.radius, f.tip.x});
    box.min.y = std::min({box.min.y, f.center.y - f.radius, f.tip.y});
    box.max.x = std::max({box.max.x, f.center.x + f.radius, f.tip.x});
    box.max.y = std::max({box.max.y, f.center.y + f.radius, f.tip.y});
  }
  return box;
}

geometry::BoundingBox padded(geometry::BoundingBox box, double margin) {
  box.min = box.min - Vec2{margin, margin};
  box.max = box.max + Vec2{margin, margin};
  return box;
}

// Teardrop outline: tip, first tangent point, the far arc, second tangent point.
std::string silhouette_path(const Canvas& c, const Footprint& f) {
  const double r = f.radius * c.pixels_per_unit;
  if (distance(f.tip, f.center) <= f.radius) {
    const Vec2 p = c.to_pixel(f.center);
    return "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(r) + "\"";
  }
  const auto [t1, t2] = brush::tip_tangent_points(f);
  // counter-clockwise in the world is clockwise on the y-down page: sweep flag 1
  return "<path d=\"M " + pt(c, f.tip) + " L " + pt(c, t1) + " A " + num(r) + ' ' + num(r) + " 0 1 1 " + pt(c, t2) +
         " Z\"";
}

std::vector<double> ink_levels(std::span<const Footprint> fs, const RenderOptions& opts) {
  std::vector<double> ink(fs.size(), 1.0);
  if (opts.style != InkStyle::Fade || fs.size() < 2) return ink;
  std::vector<double> cum(fs.size(), 0.0);
  for (std::size_t k = 1; k < fs.size(); ++k) cum[k] = cum[k - 1] + distance(fs[k - 1].center, fs[k].center);
  if (cum.back() <= 0.0) return ink;
  for (std::size_t k = 0; k < fs.size(); ++k) ink[k] = 1.0 + (opts.end_ink - 1.0) * cum[k] / cum.back();
  return ink;
}

std::string svg_open(const Canvas& c) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(c.width) + "\" height=\"" + std::to_string(c.height) + "\" viewBox=\"0 0 " +
         std::to_string(c.width) + ' ' + std::to_string(c.height) + "\">\n";
}

}  // namespace

Vec2 Canvas::to_pixel(Vec2 p) const {
  return {(p.x - world.min.x) * pixels_per_unit, (world.max.y - p.y) * pixels_per_unit};
}

Vec2 Canvas::pixel_center(int i, int j) const {
  return {world.min.x + (i + 0.5) / pixels_per_unit, world.max.y - (j + 0.5) / pixels_per_unit};
}

Canvas make_canvas(const geometry::BoundingBox& world, double pixels_per_unit) {
  if (!(pixels_per_unit > 0.0)) throw Error(ErrorCode::InvalidConfig, "pixels_per_unit must be positive");
  Canvas c;
  c.pixels_per_unit = pixels_per_unit;
  c.width = std::max(1, static_cast<int>(std::ceil(world.width() * pixels_per_unit)));
  c.height = std::max(1, static_cast<int>(std::ceil(world.height() * pixels_per_unit)));
  c.world = world;
  c.world.max.x = world.min.x + c.width / pixels_per_unit;
  c.world.min.y = world.max.y - c.height / pixels_per_unit;
  return c;
}

std::vector<Footprint> interpolate_footprints(std::span<const Footprint> trajectory) {
  std::vector<Footprint> out;
  if (trajectory.empty()) return out;
  out.push_back(trajectory[0]);
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const Footprint& a = trajectory[k - 1];
    const Footprint& b = trajectory[k];
    const double gap = distance(a.center, b.center);
    const int inserts = gap > 0.0 ? static_cast<int>(std::ceil(gap / (0.25 * std::min(a.radius, b.radius)))) : 0;
    const double reach_a = distance(a.tip, a.center);
    const double reach_b = distance(b.tip, b.center);
    const double turn = wrap_angle(b.heading - a.heading);
    for (int q = 1; q <= inserts; ++q) {
      const double u = static_cast<double>(q) / (inserts + 1);
      const Vec2 center = lerp(a.center, b.center, u);
      const double radius = a.radius + (b.radius - a.radius) * u;
      const double reach = reach_a + (reach_b - reach_a) * u;
      out.push_back(brush::make_footprint(center, radius, center + unit_from_angle(a.heading + turn * u) * reach));
    }
    out.push_back(b);
  }
  return out;
}

StrokeImage render_stroke(std::span<const Footprint> trajectory, const RenderOptions& opts) {
  if (trajectory.empty()) throw Error(ErrorCode::EmptyTrajectory, "nothing to render: the trajectory is empty");
  const std::vector<Footprint> fs = interpolate_footprints(trajectory);
  const std::vector<double> ink = ink_levels(fs, opts);

  StrokeImage img;
  img.canvas = make_canvas(opts.bounds ? *opts.bounds : padded(footprint_extent(fs), opts.margin), opts.pixels_per_unit);
  const Canvas& c = img.canvas;

  std::vector<double> coverage(static_cast<std::size_t>(c.width) * c.height, 0.0);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const Footprint& f = fs[k];
    const brush::Silhouette shape(f);
    const Vec2 lo = c.to_pixel({std::min(f.center.x - f.radius, f.tip.x), std::max(f.center.y + f.radius, f.tip.y)});
    const Vec2 hi = c.to_pixel({std::max(f.center.x + f.radius, f.tip.x), std::min(f.center.y - f.radius, f.tip.y)});
    const int i0 = std::max(0, static_cast<int>(std::floor(lo.x)));
    const int i1 = std::min(c.width - 1, static_cast<int>(std::floor(hi.x)));
    const int j0 = std::max(0, static_cast<int>(std::floor(lo.y)));
    const int j1 = std::min(c.height - 1, static_cast<int>(std::floor(hi.y)));
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        if (!shape.contains(c.pixel_center(i, j))) continue;
        double& px = coverage[static_cast<std::size_t>(j) * c.width + i];
        px = std::max(px, ink[k]);
      }
    }
  }
  img.raster.width = c.width;
  img.raster.height = c.height;
  img.raster.pixels.resize(coverage.size());
  for (std::size_t p = 0; p < coverage.size(); ++p) {
    img.raster.pixels[p] = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - std::clamp(coverage[p], 0.0, 1.0))));
  }

  // ink never increases along the stroke, so painting back to front leaves the
  // darkest value on top, as in the raster's max-union
  std::ostringstream svg;
  svg << svg_open(c) << "<g stroke=\"none\">\n";
  for (std::size_t k = fs.size(); k-- > 0;) svg << silhouette_path(c, fs[k]) << " fill=\"" << gray_hex(ink[k]) << "\"/>\n";
  svg << "</g>\n</svg>\n";
  img.svg = svg.str();
  return img;
}

std::string render_debug(std::span<const Footprint> trajectory, const geometry::ClosedRegion& region,
                         const geometry::MedialAxis& axis, const StepTrace& trace, const RenderOptions& opts) {
  geometry::BoundingBox box = region.bounds();
  if (!trajectory.empty()) {
    const geometry::BoundingBox fb = footprint_extent(trajectory);
    box.min = {std::min(box.min.x, fb.min.x), std::min(box.min.y, fb.min.y)};
    box.max = {std::max(box.max.x, fb.max.x), std::max(box.max.y, fb.max.y)};
  }
  const Canvas c = make_canvas(opts.bounds ? *opts.bounds : padded(box, opts.margin), opts.pixels_per_unit);

  std::ostringstream svg;
  svg << svg_open(c);
  svg << "<g id=\"boundary\" fill=\"#f4f1ea\" stroke=\"#555555\" stroke-width=\"1\">\n<polygon points=\"";
  for (std::size_t k = 0; k < region.boundary().size(); ++k) {
    const Vec2 p = c.to_pixel(region.boundary()[k]);
    svg << (k ? " " : "") << num(p.x) << ',' << num(p.y);
  }
  svg << "\"/>\n</g>\n";

  svg << "<g id=\"axis\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\">\n<path d=\"";
  for (std::size_t k = 0; k < axis.samples().size(); ++k) svg << (k ? " L " : "M ") << pt(c, axis.samples()[k].point);
  svg << "\"/>\n</g>\n";

  double peak = 0.0;
  for (double r : trace.rewards) peak = std::max(peak, r);
  svg << "<g id=\"footprints\" fill=\"none\" stroke-width=\"1\">\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const bool has_step = k > 0 && k - 1 < trace.rewards.size();
    const bool blocked = k > 0 && k - 1 < trace.blocked.size() && trace.blocked[k - 1];
    std::string style;
    if (blocked) {
      style = " stroke=\"#d62728\" stroke-dasharray=\"3 2\"";
    } else {
      // light to dark green with the step reward
      const double w = has_step && peak > 0.0 ? trace.rewards[k - 1] / peak : 0.0;
      char buf[8];
      std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(200 - 180 * w)),
                    static_cast<int>(std::lround(220 - 100 * w)), static_cast<int>(std::lround(200 - 180 * w)));
      style = std::string(" stroke=\"") + buf + "\"";
    }
    svg << silhouette_path(c, trajectory[k]) << style << "/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_pgm(std::ostream& out, const Raster& raster) {
  out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.pixels.data()), static_cast<std::streamsize>(raster.pixels.size()));
}

}  // namespace inkstroke::render
