#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "inkstroke/brush.hpp"
#include "inkstroke/geometry.hpp"
#include "inkstroke/policy.hpp"
#include "inkstroke/training.hpp"

namespace inkstroke::dp {

/// The first k offsets of the nested sequence -1, 1, 0, -1/2, 1/2, -3/4, -1/4,
/// 1/4, 3/4, ... so that every candidate set contains all smaller ones.
std::vector<double> candidate_offsets(int k);

/// Arc lengths of the stage slices: 0, then steps of beta * halfwidth.
std::vector<double> stage_positions(const geometry::MedialAxis& axis, double beta);

/// Candidate footprint for offset ratio d in [-1, 1] at a stage: the center is
/// moved along the left normal by d h / (1 + |d|), which makes the fitted
/// footprint's own offset ratio equal d in a straight tube. Empty when the
/// posture fit fails.
std::optional<brush::Footprint> stage_candidate(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                                                double arclen, double d, const brush::BrushParams& params);

struct DpResult {
  std::vector<brush::BrushState> trajectory;
  double ret = 0.0;
  double wall_ms = 0.0;
  int stages = 0;
  int candidates = 0;  ///< K requested
};

/// Exact maximization of the discounted reward over one candidate per stage.
/// The state at a stage depends on the previous two choices (through omega),
/// so the search runs over candidate pairs; a move that leaves the region is
/// not allowed. Coverage labels compare each footprint with its predecessor
/// only. Throws InvalidConfig for K < 2 and DisconnectedAxis when no admissible
/// path exists.
DpResult dp_plan(const training::TrainingShape& shape, int k, const training::EnvParams& env);

struct ComparisonRow {
  std::string shape;
  std::string method;  ///< "DP" or "RL"
  int candidates = 0;  ///< 0 for RL
  double ret = 0.0;
  double wall_ms = 0.0;
  /// The same trajectory re-scored through the shared scorer.
  double rescored = 0.0;
};

/// One DP row per (shape, K) followed by one RL row (mean-action rollout) per shape.
std::vector<ComparisonRow> compare_rl_dp(std::span<const training::TrainingShape> shapes,
                                         const policy::PolicyParams& theta, std::span<const int> k_list,
                                         const training::EnvParams& env);

/// Columns: shape, method, candidates, return, time_ms.
void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);

}  // namespace inkstroke::dp
