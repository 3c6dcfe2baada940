#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkstroke/brush.hpp"
#include "inkstroke/geometry.hpp"
#include "inkstroke/mdp.hpp"
#include "inkstroke/policy.hpp"

namespace inkstroke::training {

/// A region with its medial axis, ready for rollouts.
struct TrainingShape {
  std::string name;
  geometry::ClosedRegion region;
  geometry::MedialAxis axis;
};

/// resolution <= 0 selects the region's default grid cell.
TrainingShape prepare_shape(std::string name, geometry::ClosedRegion region, double resolution = 0.0);

struct EnvParams {
  brush::BrushParams brush;
  mdp::FeatureParams features;
  mdp::RewardParams reward;
};

struct EpisodeOutcome {
  policy::EpisodeHistory history;
  std::vector<brush::BrushState> states;  ///< T + 1 states, states[0] is the start
  std::vector<bool> blocked;
  /// Restart at S for the next episode: little axis left, or the final move
  /// was blocked or earned no fresh coverage.
  bool restart_next = false;
};

/// Footprint around S: centered on the first axis sample, posture fitted.
brush::BrushState start_state(const TrainingShape& shape, const EnvParams& env);

/// Rolls T sampled steps from `init` with a fresh per-episode coverage mask.
EpisodeOutcome run_episode(const TrainingShape& shape, const policy::PolicyParams& theta,
                           const brush::BrushState& init, int steps, const EnvParams& env, policy::Rng& rng);

/// Start of the next episode in a chain: the last footprint, or `start` when
/// the outcome asks for a restart.
brush::BrushState next_episode_init(const EpisodeOutcome& outcome, const brush::BrushState& start);

/// Round-robin dealing: episode e of an iteration runs on shape e mod S.
inline int shape_of_episode(int episode, int num_shapes) { return episode % num_shapes; }

/// Axis length still ahead of the footprint center.
double remaining_length(const geometry::MedialAxis& axis, const brush::BrushState& state);

struct TrainConfig {
  int episodes = 300;   ///< N per iteration
  int steps = 32;       ///< T per episode
  int iterations = 50;  ///< M policy updates
  std::uint64_t seed = 1;
  int threads = 1;
  EnvParams env;
  policy::UpdateRule update;
  policy::PolicyParams initial = policy::PolicyParams::initial();

  /// Throws InvalidConfig unless N >= 1, T >= 2, M >= 1, threads >= 1.
  void validate() const;
};

struct IterationRecord {
  int iteration = 0;  ///< 1-based
  double avg_return = 0.0;
  /// Parameters the episodes were collected with.
  policy::PolicyParams theta;
  double baseline = 0.0;
  double wall_ms = 0.0;
};

struct TrainResult {
  std::vector<IterationRecord> trace;
  policy::PolicyParams final_theta;
};

/// Episodes are dealt round-robin (episode n goes to shape n mod S). Each
/// shape's episodes form a sequential chain restarted at S every iteration;
/// chains run concurrently. Every episode draws from its own seeded stream,
/// so the result does not depend on `threads`.
TrainResult train(const TrainConfig& config, std::span<const TrainingShape> shapes);

/// Called after every update, e.g. for progress output or checkpointing.
using IterationHook = std::function<void(const IterationRecord&, const policy::PolicyParams& updated)>;
TrainResult train(const TrainConfig& config, std::span<const TrainingShape> shapes, const IterationHook& hook);

/// Deterministic columns only: iteration, avg_return, sigma, mu0..mu5.
void write_trace_csv(std::ostream& out, std::span<const IterationRecord> trace);
/// iteration, wall_ms.
void write_timing_csv(std::ostream& out, std::span<const IterationRecord> trace);

struct Rollout {
  std::vector<brush::BrushState> states;
  mdp::ScoredTrajectory scored;
  bool reached_goal = false;
  double wall_ms = 0.0;
};

/// Mean-action rollout from S until the remaining axis is within one step or
/// `max_steps` moves were made (0 selects a cap from the axis length). Scored
/// against the full coverage history.
Rollout evaluate_policy(const TrainingShape& shape, const policy::PolicyParams& theta, const EnvParams& env,
                        int max_steps = 0);

}  // namespace inkstroke::training
