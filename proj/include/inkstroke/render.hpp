#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkstroke/brush.hpp"
#include "inkstroke/geometry.hpp"

namespace inkstroke::render {

enum class InkStyle { Solid, Fade };

struct RenderOptions {
  double pixels_per_unit = 40.0;
  /// World-space border added around the content bounds.
  double margin = 0.5;
  InkStyle style = InkStyle::Solid;
  /// Ink at the end of the stroke in Fade style; the start is always 1.
  double end_ink = 0.3;
  /// World window to draw; defaults to the footprints' extent plus margin.
  std::optional<geometry::BoundingBox> bounds;
};

/// Maps world coordinates (y up) to image pixels (y down).
struct Canvas {
  geometry::BoundingBox world;
  double pixels_per_unit = 1.0;
  int width = 0;
  int height = 0;

  Vec2 to_pixel(Vec2 p) const;
  /// World position of the center of pixel (i, j).
  Vec2 pixel_center(int i, int j) const;
};

/// 8-bit grayscale, row-major from the top row; 255 is blank paper.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int i, int j) const { return pixels[static_cast<std::size_t>(j) * width + i]; }
};

struct StrokeImage {
  Canvas canvas;
  Raster raster;
  std::string svg;
};

/// Between consecutive footprints inserts ceil(gap / (0.25 r)) blends, with gap
/// the center distance and r the smaller radius. Center and radius blend
/// linearly; the tip blends in polar form about the center (distance and angle),
/// which keeps it outside the blended disc.
std::vector<brush::Footprint> interpolate_footprints(std::span<const brush::Footprint> trajectory);

Canvas make_canvas(const geometry::BoundingBox& world, double pixels_per_unit);

/// Throws EmptyTrajectory.
StrokeImage render_stroke(std::span<const brush::Footprint> trajectory, const RenderOptions& opts = {});

/// Per-step annotations for the diagnostic view; rewards[t] and blocked[t]
/// belong to the move into footprint t + 1.
struct StepTrace {
  std::vector<double> rewards;
  std::vector<bool> blocked;
};

/// Boundary, medial axis and footprint outlines colored by step reward; blocked
/// steps are drawn dashed in red.
std::string render_debug(std::span<const brush::Footprint> trajectory, const geometry::ClosedRegion& region,
                         const geometry::MedialAxis& axis, const StepTrace& trace, const RenderOptions& opts = {});

/// Binary PGM (P5, maxval 255).
void write_pgm(std::ostream& out, const Raster& raster);

}  // namespace inkstroke::render
