#include "inkstroke/training.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "inkstroke/format.hpp"

namespace inkstroke::training {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Runs fn(k) for k in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = std::min(threads, count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

TrainingShape prepare_shape(std::string name, geometry::ClosedRegion region, double resolution) {
  const double res = resolution > 0.0 ? resolution : geometry::default_resolution(region);
  geometry::MedialAxis axis = geometry::compute_medial_axis(region, res);
  return {std::move(name), std::move(region), std::move(axis)};
}

brush::BrushState start_state(const TrainingShape& shape, const EnvParams& env) {
  return brush::initial_state(shape.region, shape.axis, env.brush);
}

double remaining_length(const geometry::MedialAxis& axis, const brush::BrushState& state) {
  return axis.total_length() - geometry::nearest_axis_point(axis, state.footprint.center).arclen;
}

EpisodeOutcome run_episode(const TrainingShape& shape, const policy::PolicyParams& theta,
                           const brush::BrushState& init, int steps, const EnvParams& env, policy::Rng& rng) {
  EpisodeOutcome out;
  brush::CoverageMask coverage(shape.region, shape.axis.resolution());
  coverage.stamp(init.footprint);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.push_back(init);
  out.history.steps.reserve(static_cast<std::size_t>(steps));

  mdp::StateFeatures s = mdp::extract_state(shape.axis, init, 1, env.features);
  int last_l = 1;
  bool last_blocked = false;
  for (int t = 0; t < steps; ++t) {
    const policy::Features x = s.as_vector();
    const policy::ActionSample a = policy::sample_action(x, theta, rng);
    const brush::StepResult r =
        brush::step(shape.region, shape.axis, out.states.back(), a.clamped, coverage, env.brush);
    const mdp::StateFeatures next = mdp::extract_state(shape.axis, r.next, r.l, env.features);
    out.history.steps.push_back({x, a.raw, mdp::reward(s, next, r.blocked, env.reward)});
    out.states.push_back(r.next);
    out.blocked.push_back(r.blocked);
    s = next;
    last_l = r.l;
    last_blocked = r.blocked;
  }
  out.history.terminal = s.as_vector();
  std::vector<double> rewards;
  rewards.reserve(out.history.steps.size());
  for (const auto& st : out.history.steps) rewards.push_back(st.reward);
  out.history.ret = mdp::episode_return(rewards, env.reward.gamma);

  const brush::BrushState& end = out.states.back();
  const double travel = steps * env.brush.beta * end.footprint.radius;
  const bool track_short = 1.2 * remaining_length(shape.axis, end) < travel;
  out.restart_next = track_short || last_blocked || last_l == 0;
  return out;
}

brush::BrushState next_episode_init(const EpisodeOutcome& outcome, const brush::BrushState& start) {
  return outcome.restart_next ? start : outcome.states.back();
}

void TrainConfig::validate() const {
  if (episodes < 1) throw Error(ErrorCode::InvalidConfig, "episodes (N) must be >= 1");
  if (steps < 2) throw Error(ErrorCode::InvalidConfig, "steps (T) must be >= 2");
  if (iterations < 1) throw Error(ErrorCode::InvalidConfig, "iterations (M) must be >= 1");
  if (threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
  if (!(env.brush.beta > 0.0)) throw Error(ErrorCode::InvalidConfig, "beta must be positive");
  if (!(env.brush.eta >= 0.0 && env.brush.eta <= 1.0)) throw Error(ErrorCode::InvalidConfig, "eta must lie in [0, 1]");
  if (!(update.step_norm > 0.0)) throw Error(ErrorCode::InvalidConfig, "update step norm must be positive");
  if (!(initial.sigma >= policy::kSigmaMin)) throw Error(ErrorCode::InvalidConfig, "initial sigma must be >= 1e-3");
  env.reward.validate();
}

TrainResult train(const TrainConfig& config, std::span<const TrainingShape> shapes) {
  return train(config, shapes, nullptr);
}

TrainResult train(const TrainConfig& config, std::span<const TrainingShape> shapes, const IterationHook& hook) {
  config.validate();
  if (shapes.empty()) throw Error(ErrorCode::InvalidConfig, "training needs at least one shape");
  const int num_shapes = static_cast<int>(shapes.size());
  const int n = config.episodes;

  std::vector<brush::BrushState> starts;
  for (const auto& shape : shapes) starts.push_back(start_state(shape, config.env));

  TrainResult result;
  policy::PolicyParams theta = config.initial;
  std::vector<policy::EpisodeHistory> histories(static_cast<std::size_t>(n));
  for (int m = 1; m <= config.iterations; ++m) {
    const auto t0 = Clock::now();
    parallel_for(num_shapes, config.threads, [&](int k) {
      const brush::BrushState& start = starts[static_cast<std::size_t>(k)];
      brush::BrushState init = start;
      for (int e = 0; e < n; ++e) {
        if (shape_of_episode(e, num_shapes) != k) continue;
        policy::Rng rng(policy::stream_seed(config.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(e)));
        EpisodeOutcome o = run_episode(shapes[static_cast<std::size_t>(k)], theta, init, config.steps, config.env, rng);
        init = next_episode_init(o, start);
        histories[static_cast<std::size_t>(e)] = std::move(o.history);
      }
    });

    IterationRecord rec;
    rec.iteration = m;
    rec.theta = theta;
    double sum = 0.0;
    for (const auto& h : histories) sum += h.ret;
    rec.avg_return = sum / n;
    rec.baseline = policy::optimal_baseline(histories, theta).value;
    const policy::Gradient grad = policy::estimate_gradient(histories, theta, rec.baseline);
    theta = policy::update(theta, grad, config.update).params;
    rec.wall_ms = elapsed_ms(t0);
    result.trace.push_back(rec);
    if (hook) hook(rec, theta);
  }
  result.final_theta = theta;
  return result;
}

void write_trace_csv(std::ostream& out, std::span<const IterationRecord> trace) {
  out << "iteration,avg_return,sigma,mu0,mu1,mu2,mu3,mu4,mu5\n";
  for (const auto& r : trace) {
    out << r.iteration << ',' << format_double(r.avg_return) << ',' << format_double(r.theta.sigma);
    for (double v : r.theta.mu) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const IterationRecord> trace) {
  out << "iteration,wall_ms\n";
  for (const auto& r : trace) out << r.iteration << ',' << format_double(r.wall_ms) << '\n';
}

Rollout evaluate_policy(const TrainingShape& shape, const policy::PolicyParams& theta, const EnvParams& env,
                        int max_steps) {
  const auto t0 = Clock::now();
  const geometry::MedialAxis& axis = shape.axis;
  if (max_steps <= 0) {
    double thinnest = std::numeric_limits<double>::infinity();
    for (const auto& s : axis.samples()) thinnest = std::min(thinnest, s.halfwidth);
    const double r_floor = std::max(thinnest, env.brush.r_min_cells * axis.resolution());
    max_steps = static_cast<int>(std::min(4000.0, std::ceil(3.0 * axis.total_length() / (env.brush.beta * r_floor))));
  }

  Rollout out;
  brush::CoverageMask coverage(shape.region, axis.resolution());
  out.states.push_back(start_state(shape, env));
  coverage.stamp(out.states.back().footprint);
  mdp::StateFeatures s = mdp::extract_state(axis, out.states.back(), 1, env.features);
  for (int t = 0; t < max_steps; ++t) {
    const brush::BrushState& cur = out.states.back();
    if (remaining_length(axis, cur) <= env.brush.beta * cur.footprint.radius) {
      out.reached_goal = true;
      break;
    }
    const double a = policy::clamp_action(theta.mean(s.as_vector()));
    const brush::StepResult r = brush::step(shape.region, axis, cur, a, coverage, env.brush);
    s = mdp::extract_state(axis, r.next, r.l, env.features);
    out.states.push_back(r.next);
  }
  if (!out.reached_goal) {
    const brush::BrushState& cur = out.states.back();
    out.reached_goal = remaining_length(axis, cur) <= env.brush.beta * cur.footprint.radius;
  }
  out.scored = mdp::score_trajectory(shape.region, axis, out.states, env.brush, env.features, env.reward,
                                     mdp::CoverageMemory::Full);
  out.wall_ms = elapsed_ms(t0);
  return out;
}

}  // namespace inkstroke::training
