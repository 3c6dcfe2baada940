#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include "inkstroke/shapes.hpp"
#include "expect.hpp"
#include "support.hpp"

using namespace inkstroke;
using namespace inkstroke::shapes;
using testing_support::expect_error;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(GenerateShape, CappedTubeArea) {
  const ShapeSpec spec = preset("straight_tube");
  const geometry::ClosedRegion r = generate_shape(spec);
  const double exact = 2.0 * spec.length() + kPi;
  EXPECT_NEAR(r.area(), exact, 0.01 * exact);
  EXPECT_TRUE(geometry::is_simple_polygon(r.boundary()));
  ASSERT_TRUE(r.start_hint() && r.goal_hint());
  EXPECT_EQ(*r.start_hint(), spec.centerline.front());
  EXPECT_EQ(*r.goal_hint(), spec.centerline.back());
}

TEST(GenerateShape, QuarterRingArea) {
  const geometry::ClosedRegion r = generate_shape(preset("quarter_ring"));
  const double exact = kPi / 4 * (36.0 - 16.0);
  EXPECT_NEAR(r.area(), exact, 0.03 * exact);
}

TEST(GenerateShape, TaperNarrowsAlongTheStroke) {
  const ShapeSpec spec = preset("taper");
  for (std::size_t k = 1; k < spec.halfwidth.size(); ++k) EXPECT_LE(spec.halfwidth[k], spec.halfwidth[k - 1]);
  const auto shape = testing_support::preset_shape("taper");
  const auto& s = shape.axis.samples();
  EXPECT_GT(shape.axis.at(0.25 * shape.axis.total_length()).halfwidth,
            shape.axis.at(0.75 * shape.axis.total_length()).halfwidth);
  EXPECT_GT(s.front().halfwidth, 0.0);
}

TEST(GenerateShape, TightFoldIsSelfIntersecting) {
  const ShapeSpec fold = CenterlineBuilder({0, 0}, 0.0).line(3).arc(0.3, kPi).line(3).with_profile(
      "fold", [](double) { return 1.0; });
  expect_error(ErrorCode::SelfIntersecting, [&] { generate_shape(fold); });
}

TEST(GenerateShape, InvalidSpecs) {
  ShapeSpec s;
  s.preset_id = "bad";
  s.centerline = {{0, 0}};
  s.halfwidth = {1};
  expect_error(ErrorCode::InvalidConfig, [&] { s.validate(); });
  s.centerline = {{0, 0}, {1, 0}};
  expect_error(ErrorCode::InvalidConfig, [&] { s.validate(); });
  s.halfwidth = {1, 0};
  expect_error(ErrorCode::InvalidConfig, [&] { s.validate(); });
  expect_error(ErrorCode::InvalidConfig, [] { preset("no_such_shape"); });
}

TEST(CenterlineBuilder, ArcsTurnLeftForPositiveSweep) {
  const ShapeSpec s = CenterlineBuilder({0, 0}, 0.0).arc(2.0, kPi / 2).with_profile("a", [](double) { return 0.5; });
  EXPECT_NEAR(s.centerline.back().x, 2.0, 1e-9);
  EXPECT_NEAR(s.centerline.back().y, 2.0, 1e-9);
  // the end tangent is the last chord, half a chord angle short of the sweep
  const double chord_angle = (kPi / 2) / 32;
  EXPECT_NEAR(s.end_tangent().angle(), kPi / 2 - chord_angle / 2, 1e-9);
  EXPECT_NEAR(s.length(), kPi, 0.01);
}

TEST(Presets, EveryPresetProducesAnAxis) {
  const auto names = preset_names();
  EXPECT_EQ(names.size(), 12u);
  for (const std::string& id : names) {
    const auto shape = testing_support::preset_shape(id);
    EXPECT_GT(shape.axis.total_length(), 0.5 * preset(id).length()) << id;
    EXPECT_LT(shape.axis.total_length(), 1.1 * preset(id).length()) << id;
    EXPECT_TRUE(geometry::is_simple_polygon(shape.region.boundary())) << id;
  }
}

TEST(Combine, AllCombinationsAreDistinctSimpleRegions) {
  std::set<long long> areas;
  int count = 0;
  for (const auto& u : upper_variants()) {
    for (const auto& c : common_variants()) {
      for (const auto& l : lower_variants()) {
        const geometry::ClosedRegion r = combine_shapes(segment_variant(u), segment_variant(c), segment_variant(l));
        EXPECT_TRUE(geometry::is_simple_polygon(r.boundary())) << u << c << l;
        areas.insert(std::llround(r.area() * 1e6));
        ++count;
        const ShapeSpec spec = combine_specs(segment_variant(u), segment_variant(c), segment_variant(l));
        EXPECT_NEAR(spec.length(),
                    segment_variant(u).length() + segment_variant(c).length() + segment_variant(l).length(), 1e-6);
      }
    }
  }
  EXPECT_EQ(count, 9);
  EXPECT_EQ(areas.size(), 9u);
}

TEST(Combine, MismatchedJointsAreRejected) {
  const ShapeSpec upper = segment_variant("straight_top");
  const ShapeSpec lower = segment_variant("straight_bottom");
  const ShapeSpec turned =
      CenterlineBuilder({0, 0}, kPi / 6).line(4).with_profile("turned", [](double) { return 1.0; });
  const ShapeSpec fat = CenterlineBuilder({0, 0}, 0.0).line(4).with_profile("fat", [](double) { return 1.2; });
  expect_error(ErrorCode::IncompatibleJoint, [&] { combine_specs(upper, turned, lower); });
  expect_error(ErrorCode::IncompatibleJoint, [&] { combine_specs(upper, fat, lower); });
  // 11.5 degrees and 5% wider at both joints
  const ShapeSpec ok = CenterlineBuilder({0, 0}, 0.2).line(4).arc(5.0, -0.2).with_profile(
      "ok", [](double) { return 1.05; });
  EXPECT_NO_THROW(combine_specs(upper, ok, lower));
}

TEST(ShapeFiles, JsonRoundTripAndRejection) {
  const geometry::ClosedRegion r = generate_shape(preset("hook"));
  const geometry::ClosedRegion back = region_from_json(nlohmann::json::parse(region_to_json(r).dump()));
  EXPECT_EQ(back.boundary(), r.boundary());
  EXPECT_EQ(back.start_hint(), r.start_hint());
  EXPECT_EQ(back.goal_hint(), r.goal_hint());

  const auto dir = std::filesystem::temp_directory_path() / "inkstroke_shapes_test";
  std::filesystem::create_directories(dir);
  save_region(dir / "hook.json", r);
  EXPECT_EQ(load_region(dir / "hook.json").boundary(), r.boundary());
  std::filesystem::remove_all(dir);

  expect_error(ErrorCode::Io, [] { load_region("/nonexistent/shape.json"); });
  expect_error(ErrorCode::InvalidConfig,
               [] { region_from_json(nlohmann::json::parse(R"({"boundary":[[0,0],[1,0],[1,1]],"colour":1})")); });
  expect_error(ErrorCode::InvalidConfig, [] { region_from_json(nlohmann::json::parse(R"({"start":[0,0]})")); });
  expect_error(ErrorCode::InvalidRegion,
               [] { region_from_json(nlohmann::json::parse(R"({"boundary":[[0,0],[2,2],[2,0],[0,2]]})")); });
}
