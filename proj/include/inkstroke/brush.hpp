#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "inkstroke/geometry.hpp"
#include "inkstroke/raster.hpp"
#include "inkstroke/vec2.hpp"

namespace inkstroke::brush {

/// Brush stamp: a tuft disc (center, radius) plus a tip point outside the disc.
struct Footprint {
  Vec2 center;
  double radius = 0.0;
  Vec2 tip;
  /// World-frame angle of center -> tip.
  double heading = 0.0;

  bool operator==(const Footprint&) const = default;
};

Footprint make_footprint(Vec2 center, double radius, Vec2 tip);

/// Same posture moved so that its center sits at `center`.
Footprint translated(const Footprint& f, Vec2 center);

/// Disc plus the triangle spanned by the tip and its two tangent points on the disc.
bool footprint_contains(const Footprint& f, Vec2 p);

/// Tangent points on the disc as seen from the tip; both equal the tip when it
/// touches the disc.
std::pair<Vec2, Vec2> tip_tangent_points(const Footprint& f);

/// Footprint with its tangent points resolved once, for many containment queries.
struct Silhouette {
  Vec2 center;
  double r2 = 0.0;
  Vec2 tip, t1, t2;

  explicit Silhouette(const Footprint& f);
  bool contains(Vec2 p) const;
};

struct BrushParams {
  /// Step length as a fraction of the current radius.
  double beta = 0.5;
  /// Fraction of fresh cells a footprint needs for the coverage label to be 1.
  double eta = 0.05;
  /// Smallest radius accepted by the posture fit, in grid cells.
  double r_min_cells = 2.0;
};

struct BrushState {
  Footprint footprint;
  /// World-frame direction of the last (attempted) movement, in (-pi, pi].
  double velocity_dir = 0.0;
  int step_index = 0;

  bool operator==(const BrushState&) const = default;
};

/// Raster frame of the coverage mask: the region's bounding box plus a 2-cell margin.
GridFrame coverage_frame(const geometry::ClosedRegion& region, double cell);

/// Coverage label of `next` measured against `prev` alone, on the same cells a
/// CoverageMask would use. Equals stamping prev then next into a fresh mask.
int predecessor_label(const GridFrame& frame, const Footprint& prev, const Footprint& next, double eta);

/// Occupancy raster over the region's bounding box; cells only flip to covered.
class CoverageMask {
 public:
  CoverageMask(const geometry::ClosedRegion& region, double cell);

  struct Count {
    std::size_t total = 0;
    std::size_t fresh = 0;
  };

  /// Cells under the footprint, and how many of those are not yet covered.
  Count probe(const Footprint& f) const;
  /// Marks the footprint's cells and returns the counts from before marking.
  Count stamp(const Footprint& f);
  /// Coverage label for a footprint: 1 iff fresh/total >= eta. Stamps the mask.
  int stamp_label(const Footprint& f, double eta);

  std::size_t covered_count() const { return covered_; }
  const GridFrame& frame() const { return frame_; }
  bool covered(int i, int j) const { return cells_[frame_.index(i, j)] != 0; }

 private:
  template <typename Fn>
  void for_each_cell(const Footprint& f, Fn&& fn) const;

  GridFrame frame_;
  std::vector<unsigned char> cells_;
  std::size_t covered_ = 0;
};

/// Automatic posture (Actions 2-4): disc tangent to the nearer wall of the
/// cross-section through `center`, tip on the farther wall. Returns nullopt
/// when the section is degenerate or the radius would drop below r_min; the
/// caller then keeps the previous posture. Throws OutsideRegion.
std::optional<Footprint> fit_posture(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                                     Vec2 center, const BrushParams& params = {});

/// Footprint centered on the first axis sample with its posture fitted.
BrushState initial_state(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                         const BrushParams& params = {});

struct StepResult {
  BrushState next;
  bool blocked = false;
  int l = 0;
};

/// Action 1: move by beta * r along the axis tangent at the pre-move nearest
/// point rotated by `action`. A move leaving the region is blocked and leaves
/// the footprint untouched.
StepResult step(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis, const BrushState& state,
                double action, CoverageMask& coverage, const BrushParams& params = {});

}  // namespace inkstroke::brush
