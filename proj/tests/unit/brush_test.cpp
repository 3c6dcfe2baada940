#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "inkstroke/brush.hpp"
#include "expect.hpp"
#include "support.hpp"

using namespace inkstroke;
using namespace inkstroke::brush;
using testing_support::expect_error;
using testing_support::rectangle;

namespace {

constexpr double kPi = std::numbers::pi;

struct Tube {
  geometry::ClosedRegion region = rectangle(10, 2);
  geometry::MedialAxis axis = geometry::compute_medial_axis(region);
};

BrushState state_at(const Footprint& f) {
  BrushState s;
  s.footprint = f;
  return s;
}

}  // namespace

TEST(Footprint, ContainmentCoversDiscAndTipTriangle) {
  const Footprint f = make_footprint({0, 0}, 1.0, {0, -3});
  EXPECT_TRUE(footprint_contains(f, {0.5, 0.5}));
  EXPECT_TRUE(footprint_contains(f, {0, -2.9}));
  EXPECT_TRUE(footprint_contains(f, {0.1, -2.0}));
  EXPECT_FALSE(footprint_contains(f, {0.8, -2.0}));
  EXPECT_FALSE(footprint_contains(f, {0, -3.1}));
  EXPECT_NEAR(f.heading, -kPi / 2, 1e-12);

  const auto [t1, t2] = tip_tangent_points(f);
  EXPECT_NEAR(distance(t1, f.center), 1.0, 1e-12);
  EXPECT_NEAR(distance(t2, f.center), 1.0, 1e-12);
  // tangency: radius is perpendicular to the tip ray
  EXPECT_NEAR(dot(t1 - f.center, t1 - f.tip), 0.0, 1e-12);
  EXPECT_NEAR(dot(t2 - f.center, t2 - f.tip), 0.0, 1e-12);
}

TEST(Footprint, TranslationKeepsPosture) {
  const Footprint f = make_footprint({1, 1}, 0.5, {1, 0});
  const Footprint g = translated(f, {4, 2});
  EXPECT_EQ(g.center, (Vec2{4, 2}));
  EXPECT_EQ(g.tip, (Vec2{4, 1}));
  EXPECT_EQ(g.radius, f.radius);
  EXPECT_EQ(g.heading, f.heading);
}

TEST(FitPosture, CenteredInTubeTouchesBothWalls) {
  const Tube t;
  const auto f = fit_posture(t.region, t.axis, {5, 1});
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(f->radius, 1.0, 1e-9);
  // equal walls put the tip on the right side of the +x axis
  EXPECT_NEAR(f->tip.y, 0.0, 1e-9);
  EXPECT_NEAR(std::abs(wrap_angle(f->heading - t.axis.at(5).tangent.angle())), kPi / 2, 1e-6);
}

TEST(FitPosture, OffCenterUsesNearerWall) {
  const Tube t;
  const auto f = fit_posture(t.region, t.axis, {5, 1.5});
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(f->radius, 0.5, 1e-9);
  EXPECT_NEAR(f->tip.x, 5.0, 1e-9);
  EXPECT_NEAR(f->tip.y, 0.0, 1e-9);
  EXPECT_NEAR(distance(f->tip, f->center), 1.5, 1e-9);

  const auto g = fit_posture(t.region, t.axis, {5, 0.25});
  ASSERT_TRUE(g.has_value());
  EXPECT_NEAR(g->radius, 0.25, 1e-9);
  EXPECT_NEAR(g->tip.y, 2.0, 1e-9);
}

TEST(FitPosture, TooCloseToWallAndOutside) {
  const Tube t;
  // r_min is 2 cells = 0.04
  EXPECT_FALSE(fit_posture(t.region, t.axis, {5, 0.03}).has_value());
  EXPECT_TRUE(fit_posture(t.region, t.axis, {5, 0.05}).has_value());
  expect_error(ErrorCode::OutsideRegion, [&] { fit_posture(t.region, t.axis, {11, 1}); });
}

TEST(Step, StraightMoveAdvancesBetaRadius) {
  const Tube t;
  const BrushState s0 = state_at(*fit_posture(t.region, t.axis, {5, 1}));
  CoverageMask mask(t.region, t.axis.resolution());
  mask.stamp(s0.footprint);
  const StepResult r = step(t.region, t.axis, s0, 0.0, mask);
  EXPECT_FALSE(r.blocked);
  EXPECT_EQ(r.l, 1);
  EXPECT_NEAR(distance(r.next.footprint.center, s0.footprint.center), 0.5, 1e-9);
  EXPECT_NEAR(r.next.footprint.center.x, 5.5, 1e-9);
  EXPECT_NEAR(r.next.footprint.radius, 1.0, 1e-9);
  EXPECT_NEAR(r.next.footprint.heading, s0.footprint.heading, 1e-9);
  EXPECT_NEAR(r.next.velocity_dir, 0.0, 1e-9);
  EXPECT_EQ(r.next.step_index, 1);
}

TEST(Step, LeavingTheRegionIsBlocked) {
  const Tube t;
  const BrushState s0 = state_at(make_footprint({5, 1.9}, 1.0, {5, 0}));
  CoverageMask mask(t.region, t.axis.resolution());
  const std::size_t before = mask.covered_count();
  const StepResult r = step(t.region, t.axis, s0, kPi / 2, mask);
  EXPECT_TRUE(r.blocked);
  EXPECT_EQ(r.l, 0);
  EXPECT_EQ(r.next.footprint, s0.footprint);
  EXPECT_NEAR(r.next.velocity_dir, kPi / 2, 1e-9);
  EXPECT_EQ(mask.covered_count(), before);
}

TEST(Step, ReturningOverCoveredCanvasEarnsNoLabel) {
  const Tube t;
  const BrushState s0 = state_at(*fit_posture(t.region, t.axis, {5, 1}));
  CoverageMask mask(t.region, t.axis.resolution());
  mask.stamp(s0.footprint);
  const StepResult fwd = step(t.region, t.axis, s0, 0.0, mask);
  const StepResult back = step(t.region, t.axis, fwd.next, kPi, mask);
  EXPECT_FALSE(back.blocked);
  EXPECT_EQ(back.l, 0);
  EXPECT_NEAR(back.next.footprint.center.x, 5.0, 1e-9);
}

TEST(Step, RandomWalkInvariants) {
  for (const char* id : {"s_curve", "taper", "hook"}) {
    const auto shape = testing_support::preset_shape(id);
    const BrushParams params;
    const double r_min = params.r_min_cells * shape.axis.resolution();
    BrushState s = initial_state(shape.region, shape.axis, params);
    CoverageMask mask(shape.region, shape.axis.resolution());
    mask.stamp(s.footprint);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    for (int k = 0; k < 300; ++k) {
      const double a = angle(rng);
      const StepResult r = step(shape.region, shape.axis, s, a, mask, params);
      const Footprint& f = r.next.footprint;
      EXPECT_TRUE(shape.region.contains(f.center)) << id;
      EXPECT_GT(distance(f.tip, f.center), f.radius - 1e-9) << id;
      if (r.blocked) {
        EXPECT_EQ(f, s.footprint) << id;
        EXPECT_EQ(r.l, 0) << id;
      } else {
        EXPECT_NEAR(distance(f.center, s.footprint.center), params.beta * s.footprint.radius, 1e-9) << id;
        EXPECT_GE(f.radius, std::min(r_min, s.footprint.radius) - 1e-12) << id;
        EXPECT_TRUE(r.l == 0 || r.l == 1) << id;
      }
      s = r.next;
    }
  }
}

TEST(Coverage, PredecessorLabelMatchesFreshMask) {
  const Tube t;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(1.5, 8.5);
  std::uniform_real_distribution<double> uy(0.3, 1.7);
  std::uniform_real_distribution<double> step_len(0.0, 0.3);
  for (int k = 0; k < 200; ++k) {
    const auto a = fit_posture(t.region, t.axis, {ux(rng), uy(rng)});
    if (!a) continue;
    const Vec2 q = a->center + Vec2{step_len(rng), 0.0};
    if (!t.region.contains(q)) continue;
    const auto b = fit_posture(t.region, t.axis, q);
    if (!b) continue;
    for (double eta : {0.05, 0.3}) {
      CoverageMask mask(t.region, t.axis.resolution());
      mask.stamp(*a);
      EXPECT_EQ(predecessor_label(mask.frame(), *a, *b, eta), mask.stamp_label(*b, eta));
    }
  }
}

TEST(Coverage, CellsOnlyFlipToCovered) {
  const Tube t;
  CoverageMask mask(t.region, t.axis.resolution());
  const Footprint f = *fit_posture(t.region, t.axis, {3, 1});
  const CoverageMask::Count first = mask.stamp(f);
  EXPECT_GT(first.total, 0u);
  EXPECT_EQ(first.fresh, first.total);
  EXPECT_EQ(mask.covered_count(), first.total);
  const CoverageMask::Count again = mask.stamp(f);
  EXPECT_EQ(again.fresh, 0u);
  EXPECT_EQ(mask.covered_count(), first.total);
  EXPECT_EQ(mask.stamp_label(f, 0.05), 0);
}
