#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "inkstroke/training.hpp"
#include "expect.hpp"
#include "support.hpp"

using namespace inkstroke;
using namespace inkstroke::training;
using testing_support::preset_shape;

namespace {

constexpr double kPi = std::numbers::pi;

policy::PolicyParams straight_ahead() {
  policy::PolicyParams p;
  p.sigma = 1e-3;
  return p;
}

double param_distance(const policy::PolicyParams& a, const policy::PolicyParams& b) {
  double sq = (a.sigma - b.sigma) * (a.sigma - b.sigma);
  for (int k = 0; k < 6; ++k) sq += (a.mu[k] - b.mu[k]) * (a.mu[k] - b.mu[k]);
  return std::sqrt(sq);
}

std::vector<TrainingShape> desk_shapes() {
  return {preset_shape("straight_tube"), preset_shape("c_arc_large"), preset_shape("taper")};
}

}  // namespace

TEST(Episode, StraightPolicyAdvancesAndEarns) {
  const TrainingShape shape = preset_shape("straight_tube");
  const EnvParams env;
  policy::Rng rng(1);
  const brush::BrushState s0 = start_state(shape, env);
  const EpisodeOutcome o = run_episode(shape, straight_ahead(), s0, 16, env, rng);
  ASSERT_EQ(o.states.size(), 17u);
  ASSERT_EQ(o.history.steps.size(), 16u);
  EXPECT_EQ(o.states.front(), s0);
  EXPECT_GT(o.history.ret, 0.0);
  EXPECT_GT(o.states.back().footprint.center.x, s0.footprint.center.x + 3.0);
  for (bool b : o.blocked) EXPECT_FALSE(b);
  EXPECT_FALSE(o.restart_next);
  EXPECT_EQ(next_episode_init(o, s0), o.states.back());
}

TEST(Episode, PolicyPushingIntoTheWallEarnsNothing) {
  const TrainingShape shape = testing_support::rectangle_shape();
  const EnvParams env;
  brush::BrushState init;
  init.footprint = brush::make_footprint({5, 1.9}, 1.0, {5, 0});
  init.velocity_dir = 0.0;
  const double d = mdp::extract_state(shape.axis, init, 1).d;
  ASSERT_GT(d, 0.5);
  policy::PolicyParams theta = straight_ahead();
  theta.mu[2] = (kPi / 2) / d;  // a = mu2 * d = pi/2: straight into the top wall
  policy::Rng rng(2);
  const EpisodeOutcome o = run_episode(shape, theta, init, 8, env, rng);
  EXPECT_EQ(o.history.ret, 0.0);
  for (bool b : o.blocked) EXPECT_TRUE(b);
  for (const auto& s : o.states) EXPECT_EQ(s.footprint, init.footprint);
  EXPECT_TRUE(o.restart_next);
  EXPECT_EQ(next_episode_init(o, init), init);
}

TEST(Episode, RestartWhenTheAxisRunsOut) {
  const TrainingShape shape = preset_shape("straight_tube");
  const EnvParams env;
  const brush::BrushState s0 = start_state(shape, env);
  policy::Rng rng(3);
  // 40 steps of 0.5 cover more than the 16-unit axis
  const EpisodeOutcome o = run_episode(shape, straight_ahead(), s0, 40, env, rng);
  EXPECT_TRUE(o.restart_next);
  EXPECT_EQ(next_episode_init(o, s0), s0);
}

TEST(Episode, RewardsMatchTheSharedScorer) {
  const EnvParams env;
  for (const char* id : {"s_curve", "taper"}) {
    const TrainingShape shape = preset_shape(id);
    policy::PolicyParams theta;
    theta.sigma = 0.6;
    policy::Rng rng(5);
    const EpisodeOutcome o = run_episode(shape, theta, start_state(shape, env), 32, env, rng);
    const mdp::ScoredTrajectory s =
        mdp::score_trajectory(shape.region, shape.axis, o.states, env.brush, env.features, env.reward);
    ASSERT_EQ(s.rewards.size(), o.history.steps.size());
    for (std::size_t t = 0; t < s.rewards.size(); ++t) EXPECT_EQ(s.rewards[t], o.history.steps[t].reward) << id << t;
    EXPECT_EQ(s.ret, o.history.ret);
  }
}

TEST(Episodes, RoundRobinDealing) {
  for (int n : {1, 7, 10, 300}) {
    for (int s : {1, 2, 3, 5}) {
      std::vector<int> count(s, 0);
      for (int e = 0; e < n; ++e) ++count[shape_of_episode(e, s)];
      for (int c : count) {
        EXPECT_GE(c, n / s);
        EXPECT_LE(c, (n + s - 1) / s);
      }
    }
  }
}

TEST(StartState, HeadingWithinQuarterTurnOfAxis) {
  const EnvParams env;
  for (const std::string& id : shapes::preset_names()) {
    const TrainingShape shape = preset_shape(id);
    const brush::BrushState s = start_state(shape, env);
    const double rel = wrap_angle(s.footprint.heading - shape.axis.front().tangent.angle());
    EXPECT_LE(std::abs(rel), kPi / 2 + 1e-6) << id;
    EXPECT_NEAR(wrap_angle(s.velocity_dir - shape.axis.front().tangent.angle()), 0.0, 1e-12) << id;
    EXPECT_TRUE(shape.region.contains(s.footprint.center)) << id;
  }
}

TEST(Train, SingleUpdateMovesByStepNorm) {
  TrainConfig cfg;
  cfg.episodes = 4;
  cfg.steps = 8;
  cfg.iterations = 1;
  const auto shapes = desk_shapes();
  const TrainResult r = train(cfg, shapes);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].theta, cfg.initial);
  EXPECT_NEAR(param_distance(r.final_theta, cfg.initial), 0.1, 1e-12);
}

TEST(Train, ConfigValidation) {
  const auto shapes = desk_shapes();
  TrainConfig cfg;
  cfg.steps = 1;
  testing_support::expect_error(ErrorCode::InvalidConfig, [&] { train(cfg, shapes); });
  cfg = TrainConfig{};
  cfg.episodes = 0;
  testing_support::expect_error(ErrorCode::InvalidConfig, [&] { train(cfg, shapes); });
  cfg = TrainConfig{};
  testing_support::expect_error(ErrorCode::InvalidConfig, [&] { train(cfg, std::span<const TrainingShape>{}); });
}

TEST(Train, DeskRunImprovesAndIgnoresThreadCount) {
  TrainConfig cfg;
  cfg.episodes = 50;
  cfg.steps = 16;
  cfg.iterations = 30;
  cfg.seed = 1;
  const auto shapes = desk_shapes();
  int hook_calls = 0;
  const TrainResult one = train(cfg, shapes, [&](const IterationRecord& rec, const policy::PolicyParams&) {
    EXPECT_EQ(rec.iteration, ++hook_calls);
  });
  EXPECT_EQ(hook_calls, 30);
  EXPECT_GT(one.trace.back().avg_return, one.trace.front().avg_return);

  cfg.threads = 3;
  const TrainResult three = train(cfg, shapes);
  ASSERT_EQ(one.trace.size(), three.trace.size());
  for (std::size_t m = 0; m < one.trace.size(); ++m) {
    EXPECT_EQ(one.trace[m].avg_return, three.trace[m].avg_return);
    EXPECT_EQ(one.trace[m].theta, three.trace[m].theta);
  }
  EXPECT_EQ(one.final_theta, three.final_theta);

  std::ostringstream a;
  std::ostringstream b;
  write_trace_csv(a, one.trace);
  write_trace_csv(b, three.trace);
  EXPECT_EQ(a.str(), b.str());

  // a policy trained on other shapes still draws an unseen one
  const Rollout r = evaluate_policy(preset_shape("s_curve"), one.final_theta, cfg.env);
  EXPECT_GT(r.scored.ret, 0.0);
}

TEST(Train, CsvLayout) {
  std::vector<IterationRecord> trace(2);
  trace[0].iteration = 1;
  trace[0].avg_return = 1.5;
  trace[0].wall_ms = 2.25;
  trace[1].iteration = 2;
  trace[1].theta.mu[3] = -0.1;
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  EXPECT_EQ(csv.str(),
            "iteration,avg_return,sigma,mu0,mu1,mu2,mu3,mu4,mu5\n"
            "1,1.5,2,0,0,0,0,0,0\n"
            "2,0,2,0,0,0,-0.1,0,0\n");
  std::ostringstream timing;
  write_timing_csv(timing, trace);
  EXPECT_EQ(timing.str(), "iteration,wall_ms\n1,2.25\n2,0\n");
}

TEST(Evaluate, MeanRolloutReachesTheGoalOfATube) {
  const TrainingShape shape = preset_shape("straight_tube");
  const EnvParams env;
  const Rollout r = evaluate_policy(shape, straight_ahead(), env);
  EXPECT_TRUE(r.reached_goal);
  EXPECT_EQ(r.scored.states.size(), r.states.size());
  EXPECT_GT(r.scored.ret, 0.0);
  const mdp::ScoredTrajectory again =
      mdp::score_trajectory(shape.region, shape.axis, r.states, env.brush, env.features, env.reward);
  EXPECT_EQ(again.rewards, r.scored.rewards);
  EXPECT_LE(remaining_length(shape.axis, r.states.back()), env.brush.beta * r.states.back().footprint.radius);

  const Rollout capped = evaluate_policy(shape, straight_ahead(), env, 3);
  EXPECT_EQ(capped.states.size(), 4u);
  EXPECT_FALSE(capped.reached_goal);
}
