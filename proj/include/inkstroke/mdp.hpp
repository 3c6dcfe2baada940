#pragma once

#include <array>
#include <span>
#include <vector>

#include "inkstroke/brush.hpp"
#include "inkstroke/geometry.hpp"

namespace inkstroke::mdp {

/// Relative state s = (omega, phi, d, kappa1, kappa2, l).
struct StateFeatures {
  double omega = 0.0;   ///< velocity angle relative to the axis, (-pi, pi]
  double phi = 0.0;     ///< heading relative to the axis, (-pi, pi]
  double d = 0.0;       ///< signed offset ratio delta / r, clamped to [-2, 2]
  double kappa1 = 0.0;  ///< curvature feature at the nearest axis point
  double kappa2 = 0.0;  ///< curvature feature one expected step ahead
  int l = 1;            ///< 1 when the footprint reached uncovered canvas

  std::array<double, 6> as_vector() const { return {omega, phi, d, kappa1, kappa2, static_cast<double>(l)}; }
  bool operator==(const StateFeatures&) const = default;
};

struct RewardParams {
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  double tau1 = 0.5;
  double tau2 = 0.5;
  double zeta1 = 1.0 / 3.0;
  double zeta2 = 1.0 / 3.0;
  double zeta3 = 1.0 / 3.0;
  /// Penalty added to the location energy when |d| > 1.
  double W = 1.0;
  double gamma = 0.99;
  /// Floor on the reward denominator.
  double denom_eps = 1e-3;

  /// Throws InvalidConfig on negative weights or gamma outside [0, 1).
  void validate() const;
  bool operator==(const RewardParams&) const = default;
};

struct FeatureParams {
  /// Curvature sensitivity.
  double alpha = 0.05;
  /// Lookahead for kappa2, as a multiple of the footprint radius (the expected step).
  double beta = 0.5;
};

StateFeatures extract_state(const geometry::MedialAxis& axis, const brush::BrushState& cur, int l,
                            const FeatureParams& params = {});

/// Normalized squared change: 1 when both are zero, else (x - y)^2 / (|x| + |y|)^2.
double delta(double x_t, double x_prev);

double location_energy(double omega, double d, const RewardParams& params);
double posture_energy(double d_omega, double d_phi, double d_d, const RewardParams& params);

/// Immediate reward for the transition prev -> cur. Zero when blocked or when
/// cur.l == 0. Heading is folded to |phi| before differencing.
double reward(const StateFeatures& prev, const StateFeatures& cur, bool blocked, const RewardParams& params);

/// Discounted sum: sum_t gamma^(t-1) R_t.
double episode_return(std::span<const double> rewards, double gamma);

/// How the coverage label is evaluated when re-scoring a trajectory.
enum class CoverageMemory {
  Full,         ///< against every earlier footprint (what a rollout sees)
  Predecessor,  ///< against the immediately preceding footprint only
};

struct ScoredTrajectory {
  std::vector<StateFeatures> states;  ///< states[0] is the initial state
  std::vector<double> rewards;        ///< rewards[t] for transition t -> t+1
  std::vector<bool> blocked;
  double ret = 0.0;
};

/// Scores a sequence of brush states with the same arithmetic a rollout uses.
/// A state whose footprint is bit-identical to the previous one counts as blocked.
ScoredTrajectory score_trajectory(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                                  std::span<const brush::BrushState> states, const brush::BrushParams& brush_params,
                                  const FeatureParams& feature_params, const RewardParams& reward_params,
                                  CoverageMemory memory = CoverageMemory::Full);

}  // namespace inkstroke::mdp
