#include "inkstroke/mdp.hpp"

#include <algorithm>
#include <cmath>

namespace inkstroke::mdp {

void RewardParams::validate() const {
  for (double w : {lambda1, lambda2, tau1, tau2, zeta1, zeta2, zeta3, W}) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidConfig, "reward weights must be finite and >= 0");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must lie in [0, 1)");
  if (!(denom_eps > 0.0)) throw Error(ErrorCode::InvalidConfig, "denom_eps must be positive");
}

namespace {

// Relative angles this close to zero come from rounding, not from the motion;
// snapping them keeps delta's zero-zero case independent of the last bit.
constexpr double kAngleZero = 1e-9;

double snap_angle(double a) { return std::abs(a) < kAngleZero ? 0.0 : a; }

}  // namespace

StateFeatures extract_state(const geometry::MedialAxis& axis, const brush::BrushState& cur, int l,
                            const FeatureParams& params) {
  const brush::Footprint& f = cur.footprint;
  const geometry::AxisProjection p = geometry::nearest_axis_point(axis, f.center);
  const double axis_angle = p.tangent.angle();
  StateFeatures s;
  s.omega = snap_angle(wrap_angle(cur.velocity_dir - axis_angle));
  s.phi = snap_angle(wrap_angle(f.heading - axis_angle));
  s.d = std::clamp(geometry::side_sign(p.side) * p.distance / f.radius, -2.0, 2.0);
  s.kappa1 = geometry::curvature_feature(axis, p.arclen, params.alpha);
  s.kappa2 = geometry::curvature_feature(axis, p.arclen + params.beta * f.radius, params.alpha);
  s.l = l;
  return s;
}

double delta(double x_t, double x_prev) {
  if (x_t == 0.0 && x_prev == 0.0) return 1.0;
  const double num = x_t - x_prev;
  const double den = std::abs(x_t) + std::abs(x_prev);
  return (num * num) / (den * den);
}

double location_energy(double omega, double d, const RewardParams& params) {
  const double e = params.tau1 * std::abs(omega);
  if (std::abs(d) > 1.0) return e + params.tau2 * (std::abs(d) + params.W);
  return e;
}

double posture_energy(double d_omega, double d_phi, double d_d, const RewardParams& params) {
  return params.zeta1 * d_omega + params.zeta2 * d_phi + params.zeta3 * d_d;
}

double reward(const StateFeatures& prev, const StateFeatures& cur, bool blocked, const RewardParams& params) {
  if (blocked || cur.l == 0) return 0.0;
  const double e_location = location_energy(cur.omega, cur.d, params);
  const double e_posture = posture_energy(delta(cur.omega, prev.omega), delta(std::abs(cur.phi), std::abs(prev.phi)),
                                          delta(cur.d, prev.d), params);
  const double numerator = 1.0 + 0.5 * (std::abs(cur.kappa1) + std::abs(cur.kappa2));
  const double denominator = std::max(params.lambda1 * e_location + params.lambda2 * e_posture, params.denom_eps);
  return numerator / denominator;
}

double episode_return(std::span<const double> rewards, double gamma) {
  double acc = 0.0;
  double discount = 1.0;
  for (double r : rewards) {
    acc += discount * r;
    discount *= gamma;
  }
  return acc;
}

ScoredTrajectory score_trajectory(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                                  std::span<const brush::BrushState> states, const brush::BrushParams& brush_params,
                                  const FeatureParams& feature_params, const RewardParams& reward_params,
                                  CoverageMemory memory) {
  ScoredTrajectory out;
  if (states.empty()) return out;
  const double cell = axis.resolution();
  brush::CoverageMask full(region, cell);
  full.stamp(states[0].footprint);
  out.states.push_back(extract_state(axis, states[0], 1, feature_params));
  for (std::size_t t = 1; t < states.size(); ++t) {
    const bool blocked = states[t].footprint == states[t - 1].footprint;
    int l = 0;
    if (!blocked) {
      if (memory == CoverageMemory::Full) {
        l = full.stamp_label(states[t].footprint, brush_params.eta);
      } else {
        l = brush::predecessor_label(full.frame(), states[t - 1].footprint, states[t].footprint, brush_params.eta);
      }
    }
    out.states.push_back(extract_state(axis, states[t], l, feature_params));
    out.blocked.push_back(blocked);
    out.rewards.push_back(reward(out.states[t - 1], out.states[t], blocked, reward_params));
  }
  out.ret = episode_return(out.rewards, reward_params.gamma);
  return out;
}

}  // namespace inkstroke::mdp
