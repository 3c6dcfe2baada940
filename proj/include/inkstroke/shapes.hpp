#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "inkstroke/geometry.hpp"

namespace inkstroke::shapes {

enum class EndCap { Round, Flat };

/// A stroke template: a centerline with a half-width at every vertex.
struct ShapeSpec {
  std::string preset_id;
  std::vector<Vec2> centerline;
  std::vector<double> halfwidth;
  EndCap cap = EndCap::Round;

  double length() const;
  Vec2 start_tangent() const;
  Vec2 end_tangent() const;
  /// Throws InvalidConfig on mismatched sizes, < 2 vertices or non-positive widths.
  void validate() const;
};

/// Sweeps the width profile along the centerline and closes the outline with
/// round or flat caps; S and G hints sit at the centerline ends.
/// Throws SelfIntersecting when the swept outline crosses itself.
geometry::ClosedRegion generate_shape(const ShapeSpec& spec);

/// Joins three pieces end to start (each translated onto the previous end).
/// Throws IncompatibleJoint when tangents differ by more than 15 degrees or
/// half-widths by more than 10%.
ShapeSpec combine_specs(const ShapeSpec& upper, const ShapeSpec& common, const ShapeSpec& lower);
geometry::ClosedRegion combine_shapes(const ShapeSpec& upper, const ShapeSpec& common, const ShapeSpec& lower);

/// Builds centerlines from straight runs and circular arcs at a fixed spacing.
class CenterlineBuilder {
 public:
  CenterlineBuilder(Vec2 start, double heading, double spacing = 0.1);

  CenterlineBuilder& line(double length);
  /// Positive sweep turns left (counter-clockwise).
  CenterlineBuilder& arc(double radius, double sweep);

  const std::vector<Vec2>& points() const { return points_; }
  /// Half-widths from a profile over normalized arc length u in [0, 1].
  ShapeSpec with_profile(std::string id, const std::function<double(double)>& profile,
                         EndCap cap = EndCap::Round) const;

 private:
  std::vector<Vec2> points_;
  double heading_;
  double spacing_;
};

/// The procedural stroke library.
std::vector<std::string> preset_names();
/// Throws InvalidConfig for an unknown id.
ShapeSpec preset(std::string_view id);

/// Pieces for the upper/common/lower shape combination.
std::vector<std::string> upper_variants();
std::vector<std::string> common_variants();
std::vector<std::string> lower_variants();
ShapeSpec segment_variant(std::string_view id);

// Shape files: {"boundary": [[x, y], ...], "start": [x, y]?, "goal": [x, y]?}
nlohmann::json region_to_json(const geometry::ClosedRegion& region);
geometry::ClosedRegion region_from_json(const nlohmann::json& doc);
geometry::ClosedRegion load_region(const std::filesystem::path& path);
void save_region(const std::filesystem::path& path, const geometry::ClosedRegion& region);

}  // namespace inkstroke::shapes
