#include "inkstroke/shapes.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace inkstroke::shapes {

using geometry::ClosedRegion;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCapSegments = 24;

double deg(double d) { return d * kPi / 180.0; }

Vec2 vertex_tangent(const std::vector<Vec2>& c, std::size_t i) {
  const std::size_t n = c.size();
  const Vec2 a = c[i == 0 ? 0 : i - 1];
  const Vec2 b = c[i + 1 == n ? n - 1 : i + 1];
  return (b - a).normalized();
}

void append_cap(std::vector<Vec2>& out, Vec2 center, Vec2 t, double w, double from, double to) {
  const Vec2 n = t.perp();
  for (int k = 1; k < kCapSegments; ++k) {
    const double a = from + (to - from) * k / kCapSegments;
    out.push_back(center + (t * std::cos(a) + n * std::sin(a)) * w);
  }
}

Vec2 point_from_json(const nlohmann::json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorCode::InvalidConfig, std::string(what) + " must be an [x, y] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

double ShapeSpec::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < centerline.size(); ++i) len += distance(centerline[i - 1], centerline[i]);
  return len;
}

Vec2 ShapeSpec::start_tangent() const { return (centerline[1] - centerline[0]).normalized(); }
Vec2 ShapeSpec::end_tangent() const {
  const std::size_t n = centerline.size();
  return (centerline[n - 1] - centerline[n - 2]).normalized();
}

void ShapeSpec::validate() const {
  if (centerline.size() < 2) throw Error(ErrorCode::InvalidConfig, "shape '" + preset_id + "' needs 2+ vertices");
  if (halfwidth.size() != centerline.size()) {
    throw Error(ErrorCode::InvalidConfig, "shape '" + preset_id + "' width profile does not match its centerline");
  }
  for (double w : halfwidth) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidConfig, "shape '" + preset_id + "' has a non-positive half-width");
  }
}

ClosedRegion generate_shape(const ShapeSpec& spec) {
  spec.validate();
  const auto& c = spec.centerline;
  const auto& w = spec.halfwidth;
  const std::size_t n = c.size();
  std::vector<Vec2> outline;
  outline.reserve(2 * n + 2 * kCapSegments);
  for (std::size_t i = 0; i < n; ++i) outline.push_back(c[i] - vertex_tangent(c, i).perp() * w[i]);
  if (spec.cap == EndCap::Round) append_cap(outline, c[n - 1], vertex_tangent(c, n - 1), w[n - 1], -kPi / 2, kPi / 2);
  for (std::size_t i = n; i-- > 0;) outline.push_back(c[i] + vertex_tangent(c, i).perp() * w[i]);
  if (spec.cap == EndCap::Round) append_cap(outline, c[0], vertex_tangent(c, 0), w[0], kPi / 2, 3 * kPi / 2);

  if (!geometry::is_simple_polygon(outline)) {
    throw Error(ErrorCode::SelfIntersecting, "outline of '" + spec.preset_id + "' crosses itself");
  }
  return ClosedRegion::create(std::move(outline), c.front(), c.back());
}

ShapeSpec combine_specs(const ShapeSpec& upper, const ShapeSpec& common, const ShapeSpec& lower) {
  upper.validate();
  common.validate();
  lower.validate();
  ShapeSpec out;
  out.preset_id = upper.preset_id + "+" + common.preset_id + "+" + lower.preset_id;
  out.cap = EndCap::Round;
  out.centerline = upper.centerline;
  out.halfwidth = upper.halfwidth;
  auto attach = [&out](const ShapeSpec& piece) {
    const std::size_t n = out.centerline.size();
    const Vec2 end_t = (out.centerline[n - 1] - out.centerline[n - 2]).normalized();
    const double turn = std::abs(std::atan2(cross(end_t, piece.start_tangent()), dot(end_t, piece.start_tangent())));
    if (turn > deg(15.0)) {
      std::ostringstream msg;
      msg << "tangent mismatch of " << turn * 180.0 / kPi << " degrees joining '" << piece.preset_id << "'";
      throw Error(ErrorCode::IncompatibleJoint, msg.str());
    }
    const double w0 = out.halfwidth.back();
    const double w1 = piece.halfwidth.front();
    if (std::abs(w0 - w1) > 0.1 * std::max(w0, w1)) {
      throw Error(ErrorCode::IncompatibleJoint, "half-width mismatch joining '" + piece.preset_id + "'");
    }
    const Vec2 shift = out.centerline.back() - piece.centerline.front();
    for (std::size_t i = 1; i < piece.centerline.size(); ++i) {
      out.centerline.push_back(piece.centerline[i] + shift);
      out.halfwidth.push_back(piece.halfwidth[i]);
    }
  };
  attach(common);
  attach(lower);
  return out;
}

ClosedRegion combine_shapes(const ShapeSpec& upper, const ShapeSpec& common, const ShapeSpec& lower) {
  return generate_shape(combine_specs(upper, common, lower));
}

// ---------------------------------------------------------------------------

CenterlineBuilder::CenterlineBuilder(Vec2 start, double heading, double spacing)
    : points_{start}, heading_(heading), spacing_(spacing) {}

CenterlineBuilder& CenterlineBuilder::line(double length) {
  const int steps = std::max(1, static_cast<int>(std::ceil(length / spacing_)));
  const Vec2 origin = points_.back();
  const Vec2 dir = unit_from_angle(heading_);
  for (int k = 1; k <= steps; ++k) points_.push_back(origin + dir * (length * k / steps));
  return *this;
}

CenterlineBuilder& CenterlineBuilder::arc(double radius, double sweep) {
  const double length = radius * std::abs(sweep);
  const int steps = std::max(2, static_cast<int>(std::ceil(length / spacing_)));
  const double side = sweep > 0.0 ? 1.0 : -1.0;
  const Vec2 origin = points_.back();
  const Vec2 center = origin + unit_from_angle(heading_).perp() * (radius * side);
  const double a0 = (origin - center).angle();
  for (int k = 1; k <= steps; ++k) points_.push_back(center + unit_from_angle(a0 + sweep * k / steps) * radius);
  heading_ += sweep;
  return *this;
}

ShapeSpec CenterlineBuilder::with_profile(std::string id, const std::function<double(double)>& profile,
                                          EndCap cap) const {
  ShapeSpec spec;
  spec.preset_id = std::move(id);
  spec.centerline = points_;
  spec.cap = cap;
  std::vector<double> cum(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) cum[i] = cum[i - 1] + distance(points_[i - 1], points_[i]);
  for (double s : cum) spec.halfwidth.push_back(profile(s / cum.back()));
  return spec;
}

// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
  return {"straight_tube", "taper",          "flare",    "c_arc_small",      "c_arc_large", "s_curve",
          "hook",          "wave",           "crescent", "both_end_taper",   "thick_thin_thick", "quarter_ring"};
}

ShapeSpec preset(std::string_view id) {
  auto constant = [](double w) { return [w](double) { return w; }; };
  auto linear = [](double a, double b) { return [a, b](double u) { return a + (b - a) * u; }; };
  const Vec2 origin{0.0, 0.0};
  const std::string name(id);
  if (id == "straight_tube") return CenterlineBuilder(origin, 0.0).line(16.0).with_profile(name, constant(1.0));
  if (id == "taper") return CenterlineBuilder(origin, 0.0).line(16.0).with_profile(name, linear(1.2, 0.3));
  if (id == "flare") return CenterlineBuilder(origin, 0.0).line(16.0).with_profile(name, linear(0.4, 1.2));
  if (id == "c_arc_small") return CenterlineBuilder(origin, 0.0).arc(4.0, deg(150)).with_profile(name, constant(1.0));
  if (id == "c_arc_large") return CenterlineBuilder(origin, 0.0).arc(8.0, deg(110)).with_profile(name, constant(1.0));
  if (id == "s_curve") {
    return CenterlineBuilder(origin, 0.0).arc(5.0, deg(90)).arc(5.0, deg(-90)).with_profile(name, constant(0.9));
  }
  if (id == "hook") {
    return CenterlineBuilder(origin, 0.0).line(10.0).arc(2.5, deg(160)).with_profile(name, constant(0.8));
  }
  if (id == "wave") {
    std::vector<Vec2> pts;
    for (int k = 0; k <= 400; ++k) {
      const double x = 20.0 * k / 400.0;
      pts.push_back({x, 1.2 * std::sin(2.0 * kPi * x / 10.0)});
    }
    ShapeSpec spec;
    spec.preset_id = name;
    spec.centerline = std::move(pts);
    spec.halfwidth.assign(spec.centerline.size(), 0.9);
    return spec;
  }
  if (id == "crescent") {
    return CenterlineBuilder(origin, 0.0).arc(6.0, deg(120)).with_profile(name, [](double u) {
      return 0.25 + 1.1 * std::sin(kPi * u);
    });
  }
  if (id == "both_end_taper") {
    return CenterlineBuilder(origin, 0.0).line(16.0).with_profile(name, [](double u) {
      return 0.3 + 0.9 * std::sin(kPi * u);
    });
  }
  if (id == "thick_thin_thick") {
    return CenterlineBuilder(origin, 0.0).line(16.0).with_profile(name, [](double u) {
      return 1.2 - 0.7 * std::sin(kPi * u);
    });
  }
  if (id == "quarter_ring") {
    return CenterlineBuilder({5.0, 0.0}, kPi / 2).arc(5.0, deg(90)).with_profile(name, constant(1.0), EndCap::Flat);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown preset '" + name + "'");
}

std::vector<std::string> upper_variants() { return {"straight_top", "hook_top", "curl_top"}; }
std::vector<std::string> common_variants() { return {"straight_mid"}; }
std::vector<std::string> lower_variants() { return {"straight_bottom", "curve_bottom", "flick_bottom"}; }

ShapeSpec segment_variant(std::string_view id) {
  auto linear = [](double a, double b) { return [a, b](double u) { return a + (b - a) * u; }; };
  const Vec2 origin{0.0, 0.0};
  const std::string name(id);
  // every piece meets its neighbours heading along +x with half-width 1
  if (id == "straight_top") return CenterlineBuilder(origin, 0.0).line(5.0).with_profile(name, linear(0.6, 1.0));
  if (id == "hook_top") {
    return CenterlineBuilder(origin, deg(120)).arc(2.0, deg(-120)).with_profile(name, linear(0.5, 1.0));
  }
  if (id == "curl_top") {
    return CenterlineBuilder(origin, deg(90)).arc(1.8, deg(-90)).with_profile(name, linear(0.7, 1.0));
  }
  if (id == "straight_mid") return CenterlineBuilder(origin, 0.0).line(6.0).with_profile(name, linear(1.0, 1.0));
  if (id == "straight_bottom") return CenterlineBuilder(origin, 0.0).line(5.0).with_profile(name, linear(1.0, 0.4));
  if (id == "curve_bottom") {
    return CenterlineBuilder(origin, 0.0).arc(4.0, deg(-70)).with_profile(name, linear(1.0, 0.5));
  }
  if (id == "flick_bottom") {
    return CenterlineBuilder(origin, 0.0).line(2.0).arc(2.5, deg(80)).with_profile(name, linear(1.0, 0.35));
  }
  throw Error(ErrorCode::InvalidConfig, "unknown shape segment '" + name + "'");
}

// ---------------------------------------------------------------------------

nlohmann::json region_to_json(const ClosedRegion& region) {
  nlohmann::json doc;
  nlohmann::json boundary = nlohmann::json::array();
  for (const Vec2& p : region.boundary()) boundary.push_back({p.x, p.y});
  doc["boundary"] = std::move(boundary);
  if (region.start_hint()) doc["start"] = {region.start_hint()->x, region.start_hint()->y};
  if (region.goal_hint()) doc["goal"] = {region.goal_hint()->x, region.goal_hint()->y};
  return doc;
}

ClosedRegion region_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("boundary")) {
    throw Error(ErrorCode::InvalidConfig, "shape document needs a \"boundary\" array");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "boundary" && key != "start" && key != "goal") {
      throw Error(ErrorCode::InvalidConfig, "unknown shape key \"" + key + "\"");
    }
  }
  const auto& b = doc.at("boundary");
  if (!b.is_array()) throw Error(ErrorCode::InvalidConfig, "\"boundary\" must be an array of points");
  std::vector<Vec2> boundary;
  boundary.reserve(b.size());
  for (const auto& p : b) boundary.push_back(point_from_json(p, "boundary vertex"));
  std::optional<Vec2> start, goal;
  if (doc.contains("start")) start = point_from_json(doc.at("start"), "\"start\"");
  if (doc.contains("goal")) goal = point_from_json(doc.at("goal"), "\"goal\"");
  return ClosedRegion::create(std::move(boundary), start, goal);
}

ClosedRegion load_region(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open shape file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, "shape file " + path.string() + " is not valid JSON: " + e.what());
  }
  return region_from_json(doc);
}

void save_region(const std::filesystem::path& path, const ClosedRegion& region) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write shape file " + path.string());
  out << region_to_json(region).dump(1) << '\n';
}

}  // namespace inkstroke::shapes
