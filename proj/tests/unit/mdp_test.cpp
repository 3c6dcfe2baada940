#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "inkstroke/mdp.hpp"
#include "expect.hpp"
#include "support.hpp"

using namespace inkstroke;
using namespace inkstroke::mdp;
using testing_support::rectangle;

namespace {

constexpr double kPi = std::numbers::pi;

brush::BrushState state_of(Vec2 center, double r, Vec2 tip, double velocity) {
  brush::BrushState s;
  s.footprint = brush::make_footprint(center, r, tip);
  s.velocity_dir = velocity;
  return s;
}

StateFeatures features(double omega, double phi, double d, double k1 = 0.0, double k2 = 0.0, int l = 1) {
  StateFeatures s;
  s.omega = omega;
  s.phi = phi;
  s.d = d;
  s.kappa1 = k1;
  s.kappa2 = k2;
  s.l = l;
  return s;
}

}  // namespace

TEST(ExtractState, OffsetRatioAndAngles) {
  const auto region = rectangle(10, 2);
  const auto axis = geometry::compute_medial_axis(region);

  const StateFeatures up = extract_state(axis, state_of({5, 1.9}, 0.45, {5, 0}, 0.3), 1);
  EXPECT_NEAR(up.d, 2.0, 0.05);
  EXPECT_NEAR(up.omega, 0.3, 1e-9);
  EXPECT_NEAR(up.phi, -kPi / 2, 1e-9);
  EXPECT_EQ(up.kappa1, 0.0);
  EXPECT_EQ(up.kappa2, 0.0);
  EXPECT_EQ(up.l, 1);

  const StateFeatures down = extract_state(axis, state_of({5, 0.25}, 0.5, {5, 2}, -0.2), 0);
  EXPECT_NEAR(down.d, -1.5, 0.05);
  EXPECT_NEAR(down.omega, -0.2, 1e-9);
  EXPECT_NEAR(down.phi, kPi / 2, 1e-9);
  EXPECT_EQ(down.l, 0);

  // far outside the axis band the ratio saturates
  const StateFeatures clamped = extract_state(axis, state_of({5, 1.95}, 0.05, {5, 0}, 0.0), 1);
  EXPECT_EQ(clamped.d, 2.0);
}

TEST(ExtractState, FeaturesStayInRange) {
  const auto shape = testing_support::preset_shape("s_curve");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(shape.region.bounds().min.x, shape.region.bounds().max.x);
  std::uniform_real_distribution<double> uy(shape.region.bounds().min.y, shape.region.bounds().max.y);
  std::uniform_real_distribution<double> ang(-4.0, 4.0);
  int tested = 0;
  while (tested < 300) {
    const Vec2 c{ux(rng), uy(rng)};
    if (!shape.region.contains(c)) continue;
    const auto f = brush::fit_posture(shape.region, shape.axis, c);
    if (!f) continue;
    ++tested;
    brush::BrushState s;
    s.footprint = *f;
    s.velocity_dir = ang(rng);
    const StateFeatures x = extract_state(shape.axis, s, 1);
    EXPECT_GT(x.omega, -kPi);
    EXPECT_LE(x.omega, kPi);
    EXPECT_GT(x.phi, -kPi);
    EXPECT_LE(x.phi, kPi);
    EXPECT_GE(x.d, -2.0);
    EXPECT_LE(x.d, 2.0);
    EXPECT_GT(x.kappa1, -1.0);
    EXPECT_LT(x.kappa1, 1.0);
    EXPECT_GT(x.kappa2, -1.0);
    EXPECT_LT(x.kappa2, 1.0);
  }
}

TEST(ExtractState, InvariantUnderRotationOfTheScene) {
  const double angle = 0.7;
  std::vector<Vec2> box{{0, 0}, {10, 0}, {10, 2}, {0, 2}};
  std::vector<Vec2> turned;
  for (Vec2 p : box) turned.push_back(rotate(p, angle));
  const auto a_region = geometry::ClosedRegion::create(box);
  const auto b_region = geometry::ClosedRegion::create(turned, rotate(Vec2{0, 1}, angle), rotate(Vec2{10, 1}, angle));
  const auto a_axis = geometry::compute_medial_axis(a_region);
  const auto b_axis = geometry::compute_medial_axis(b_region);

  for (double y : {0.4, 1.0, 1.6}) {
    const Vec2 c{4.0, y};
    const brush::Footprint fa = *brush::fit_posture(a_region, a_axis, c);
    const brush::Footprint fb = *brush::fit_posture(b_region, b_axis, rotate(c, angle));
    EXPECT_NEAR(fa.radius, fb.radius, 0.02);
    brush::BrushState sa{fa, 0.25, 0};
    brush::BrushState sb{fb, 0.25 + angle, 0};
    const StateFeatures xa = extract_state(a_axis, sa, 1);
    const StateFeatures xb = extract_state(b_axis, sb, 1);
    EXPECT_NEAR(xa.omega, xb.omega, 0.02);
    EXPECT_NEAR(std::abs(xa.phi), std::abs(xb.phi), 0.02);
    EXPECT_NEAR(xa.d, xb.d, 0.05);
  }
}

TEST(Delta, HandValues) {
  EXPECT_EQ(delta(0.0, 0.0), 1.0);
  EXPECT_EQ(delta(1.0, 1.0), 0.0);
  EXPECT_EQ(delta(1.0, -1.0), 1.0);
  EXPECT_EQ(delta(0.3, 0.0), 1.0);
  EXPECT_NEAR(delta(2.0, 1.0), 1.0 / 9.0, 1e-15);
}

TEST(Delta, SymmetricAndBounded) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng);
    const double y = u(rng);
    EXPECT_EQ(delta(x, y), delta(y, x));
    EXPECT_GE(delta(x, y), 0.0);
    EXPECT_LE(delta(x, y), 1.0);
  }
}

TEST(Energy, LocationPenaltyBeyondUnitOffset) {
  const RewardParams p;
  EXPECT_NEAR(location_energy(0.2, 0.9, p), 0.1, 1e-15);
  EXPECT_NEAR(location_energy(-0.2, -1.0, p), 0.1, 1e-15);
  EXPECT_NEAR(location_energy(0.0, 1.5, p), 0.5 * (1.5 + 1.0), 1e-15);
  EXPECT_NEAR(location_energy(0.0, -1.5, p), 1.25, 1e-15);
  EXPECT_NEAR(posture_energy(1.0, 0.0, 1.0, p), 2.0 / 3.0, 1e-15);
}

TEST(Reward, HandComputedTransition) {
  const RewardParams p;
  const StateFeatures prev = features(0.0, kPi / 2, 0.0);
  const StateFeatures cur = features(0.2, -kPi / 2, 0.5, 0.2, -0.4, 1);
  // E_loc = 0.5 * 0.2; E_post = (1 + 0 + 1) / 3; heading folds to |phi|
  const double expected = 1.3 / (0.5 * 0.1 + 0.5 * (2.0 / 3.0));
  EXPECT_NEAR(reward(prev, cur, false, p), expected, 1e-12);
}

TEST(Reward, StraightTubeHandExample) {
  // omega, relative heading offset and d all zero at both steps: each delta is
  // 1 by the zero-zero rule, so E_posture = 1 and E_location = 0
  const StateFeatures s = features(0.0, 0.0, 0.0);
  EXPECT_EQ(reward(s, s, false, RewardParams{}), 2.0);
}

TEST(Reward, CenteredStraightMove) {
  const RewardParams p;
  // a perpendicular tip keeps |phi| = pi/2, so only omega and d hit the
  // zero-zero rule: E_post = 2/3
  const StateFeatures s = features(0.0, -kPi / 2, 0.0);
  EXPECT_NEAR(reward(s, s, false, p), 3.0, 1e-12);
  const StateFeatures off = features(0.0, -kPi / 2, 0.5);
  EXPECT_NEAR(reward(off, off, false, p), 6.0, 1e-12);
}

TEST(Reward, ZeroWhenBlockedOrNoFreshCoverage) {
  const RewardParams p;
  const StateFeatures prev = features(0.1, 1.0, 0.2);
  EXPECT_EQ(reward(prev, features(0.2, 1.0, 0.3), true, p), 0.0);
  EXPECT_EQ(reward(prev, features(0.2, 1.0, 0.3, 0, 0, 0), false, p), 0.0);
}

TEST(Reward, DenominatorFloor) {
  RewardParams p;
  p.tau1 = 0.0;
  const StateFeatures s = features(0.1, 1.0, 0.5);
  EXPECT_NEAR(reward(s, s, false, p), 1.0 / p.denom_eps, 1e-9);
}

TEST(Reward, NonNegativeAndBoundedByFloor) {
  const RewardParams p;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> k(-0.99, 0.99);
  for (int n = 0; n < 2000; ++n) {
    const StateFeatures x = features(a(rng), a(rng), d(rng), k(rng), k(rng), 1);
    const StateFeatures y = features(a(rng), a(rng), d(rng), k(rng), k(rng), 1);
    const double r = reward(x, y, false, p);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 2.0 / p.denom_eps);
  }
}

TEST(Return, DiscountedSum) {
  const std::vector<double> r{1.0, 2.0, 3.0};
  EXPECT_NEAR(episode_return(r, 0.5), 1.0 + 1.0 + 0.75, 1e-15);
  EXPECT_EQ(episode_return(std::vector<double>{}, 0.99), 0.0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> acc;
  double prev = 0.0;
  for (int n = 0; n < 50; ++n) {
    acc.push_back(u(rng));
    const double now = episode_return(acc, 0.99);
    EXPECT_GE(now, prev);
    prev = now;
  }
}

TEST(RewardParams, Validation) {
  RewardParams p;
  EXPECT_NO_THROW(p.validate());
  p.gamma = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = RewardParams{};
  p.tau2 = -1.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(ScoreTrajectory, RepeatedFootprintCountsAsBlocked) {
  const auto shape = testing_support::rectangle_shape();
  const brush::BrushParams bp;
  brush::BrushState s0 = brush::initial_state(shape.region, shape.axis, bp);
  brush::CoverageMask mask(shape.region, shape.axis.resolution());
  mask.stamp(s0.footprint);
  const auto s1 = brush::step(shape.region, shape.axis, s0, 0.0, mask, bp).next;
  const auto s2 = brush::step(shape.region, shape.axis, s1, 0.0, mask, bp).next;
  std::vector<brush::BrushState> states{s0, s1, s1, s2};
  const ScoredTrajectory out = score_trajectory(shape.region, shape.axis, states, bp, {}, {});
  ASSERT_EQ(out.states.size(), 4u);
  ASSERT_EQ(out.rewards.size(), 3u);
  EXPECT_FALSE(out.blocked[0]);
  EXPECT_TRUE(out.blocked[1]);
  EXPECT_FALSE(out.blocked[2]);
  EXPECT_GT(out.rewards[0], 0.0);
  EXPECT_EQ(out.rewards[1], 0.0);
  EXPECT_NEAR(out.ret, episode_return(out.rewards, RewardParams{}.gamma), 1e-12);
}
