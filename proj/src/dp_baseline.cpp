#include "inkstroke/dp_baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "inkstroke/format.hpp"
#include "inkstroke/mdp.hpp"

namespace inkstroke::dp {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kForbidden = -std::numeric_limits<double>::infinity();

struct Stage {
  std::vector<brush::Footprint> candidates;
};

}  // namespace

std::vector<double> candidate_offsets(int k) {
  std::vector<double> out;
  if (k <= 0) return out;
  out.push_back(-1.0);
  if (k >= 2) out.push_back(1.0);
  if (k >= 3) out.push_back(0.0);
  // level n adds the odd multiples of 2^-n in increasing order
  for (int level = 1; static_cast<int>(out.size()) < k; ++level) {
    const int denom = 1 << level;
    for (int num = -denom + 1; num < denom && static_cast<int>(out.size()) < k; num += 2) {
      out.push_back(static_cast<double>(num) / denom);
    }
  }
  return out;
}

std::vector<double> stage_positions(const geometry::MedialAxis& axis, double beta) {
  std::vector<double> out;
  const double floor = 2.0 * axis.resolution();
  for (double s = 0.0; s <= axis.total_length(); s += beta * std::max(axis.at(s).halfwidth, floor)) out.push_back(s);
  return out;
}

std::optional<brush::Footprint> stage_candidate(const geometry::ClosedRegion& region, const geometry::MedialAxis& axis,
                                                double arclen, double d, const brush::BrushParams& params) {
  const geometry::AxisPoint p = axis.at(arclen);
  const double offset = d * p.halfwidth / (1.0 + std::abs(d));
  const Vec2 center = p.point + p.tangent.perp() * offset;
  if (!region.contains(center)) return std::nullopt;
  return brush::fit_posture(region, axis, center, params);
}

DpResult dp_plan(const training::TrainingShape& shape, int k, const training::EnvParams& env) {
  if (k < 2) throw Error(ErrorCode::InvalidConfig, "DP needs at least 2 candidates per stage");
  const auto t0 = Clock::now();
  const geometry::ClosedRegion& region = shape.region;
  const geometry::MedialAxis& axis = shape.axis;
  const GridFrame frame = brush::coverage_frame(region, axis.resolution());
  const std::vector<double> offsets = candidate_offsets(k);

  std::vector<Stage> stages;
  for (double s : stage_positions(axis, env.brush.beta)) {
    Stage st;
    for (double d : offsets) {
      if (auto f = stage_candidate(region, axis, s, d, env.brush)) st.candidates.push_back(*f);
    }
    if (!st.candidates.empty()) stages.push_back(std::move(st));
  }
  if (stages.size() < 2) throw Error(ErrorCode::RegionTooThin, "DP found fewer than two usable stages");

  auto state_for = [&](const brush::Footprint& from, const brush::Footprint& to, int step) {
    brush::BrushState b;
    b.footprint = to;
    b.velocity_dir = wrap_angle((to.center - from.center).angle());
    b.step_index = step;
    return b;
  };

  // entry[t][i * K_t + j]: state of candidate j at stage t reached from candidate i at t - 1
  const std::size_t n_stages = stages.size();
  std::vector<std::vector<mdp::StateFeatures>> entry(n_stages);
  std::vector<std::vector<unsigned char>> allowed(n_stages);
  std::vector<mdp::StateFeatures> first;
  for (const brush::Footprint& f : stages[0].candidates) {
    brush::BrushState b;
    b.footprint = f;
    b.velocity_dir = wrap_angle(geometry::nearest_axis_point(axis, f.center).tangent.angle());
    first.push_back(mdp::extract_state(axis, b, 1, env.features));
  }
  for (std::size_t t = 1; t < n_stages; ++t) {
    const auto& prev = stages[t - 1].candidates;
    const auto& cur = stages[t].candidates;
    entry[t].resize(prev.size() * cur.size());
    allowed[t].assign(prev.size() * cur.size(), 0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (!region.segment_inside(prev[i].center, cur[j].center)) continue;
        const int l = brush::predecessor_label(frame, prev[i], cur[j], env.brush.eta);
        entry[t][i * cur.size() + j] = mdp::extract_state(axis, state_for(prev[i], cur[j], static_cast<int>(t)), l,
                                                          env.features);
        allowed[t][i * cur.size() + j] = 1;
      }
    }
  }

  // value[t][i * K_t + j]: best discounted return of a path ending with (i, j)
  std::vector<std::vector<double>> value(n_stages);
  std::vector<std::vector<int>> back(n_stages);
  double discount = 1.0;
  {
    const std::size_t kp = stages[0].candidates.size();
    const std::size_t kc = stages[1].candidates.size();
    value[1].assign(kp * kc, kForbidden);
    for (std::size_t i = 0; i < kp; ++i) {
      for (std::size_t j = 0; j < kc; ++j) {
        if (!allowed[1][i * kc + j]) continue;
        value[1][i * kc + j] = 0.0 + discount * mdp::reward(first[i], entry[1][i * kc + j], false, env.reward);
      }
    }
  }
  for (std::size_t t = 2; t < n_stages; ++t) {
    discount *= env.reward.gamma;
    const std::size_t kh = stages[t - 2].candidates.size();
    const std::size_t kp = stages[t - 1].candidates.size();
    const std::size_t kc = stages[t].candidates.size();
    value[t].assign(kp * kc, kForbidden);
    back[t].assign(kp * kc, -1);
    for (std::size_t i = 0; i < kp; ++i) {
      for (std::size_t j = 0; j < kc; ++j) {
        if (!allowed[t][i * kc + j]) continue;
        const mdp::StateFeatures& next = entry[t][i * kc + j];
        double best = kForbidden;
        int arg = -1;
        for (std::size_t h = 0; h < kh; ++h) {
          const double v = value[t - 1][h * kp + i];
          if (v == kForbidden) continue;
          const double cand = v + discount * mdp::reward(entry[t - 1][h * kp + i], next, false, env.reward);
          if (cand > best) {
            best = cand;
            arg = static_cast<int>(h);
          }
        }
        value[t][i * kc + j] = best;
        back[t][i * kc + j] = arg;
      }
    }
  }

  const std::size_t last = n_stages - 1;
  const std::size_t kc_last = stages[last].candidates.size();
  const auto best_it = std::max_element(value[last].begin(), value[last].end());
  if (*best_it == kForbidden) throw Error(ErrorCode::DisconnectedAxis, "DP found no admissible stroke");
  const std::size_t best_pair = static_cast<std::size_t>(best_it - value[last].begin());

  std::vector<std::size_t> choice(n_stages);
  choice[last] = best_pair % kc_last;
  choice[last - 1] = best_pair / kc_last;
  for (std::size_t t = last; t >= 2; --t) {
    const std::size_t kc = stages[t].candidates.size();
    choice[t - 2] = static_cast<std::size_t>(back[t][choice[t - 1] * kc + choice[t]]);
  }

  DpResult out;
  out.ret = *best_it;
  out.stages = static_cast<int>(n_stages);
  out.candidates = k;
  for (std::size_t t = 0; t < n_stages; ++t) {
    const brush::Footprint& f = stages[t].candidates[choice[t]];
    if (t == 0) {
      brush::BrushState b;
      b.footprint = f;
      b.velocity_dir = wrap_angle(geometry::nearest_axis_point(axis, f.center).tangent.angle());
      out.trajectory.push_back(b);
    } else {
      out.trajectory.push_back(state_for(stages[t - 1].candidates[choice[t - 1]], f, static_cast<int>(t)));
    }
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

std::vector<ComparisonRow> compare_rl_dp(std::span<const training::TrainingShape> shapes,
                                         const policy::PolicyParams& theta, std::span<const int> k_list,
                                         const training::EnvParams& env) {
  std::vector<ComparisonRow> rows;
  for (const auto& shape : shapes) {
    for (int k : k_list) {
      const DpResult r = dp_plan(shape, k, env);
      const double rescored = mdp::score_trajectory(shape.region, shape.axis, r.trajectory, env.brush, env.features,
                                                    env.reward, mdp::CoverageMemory::Predecessor)
                                  .ret;
      rows.push_back({shape.name, "DP", k, r.ret, r.wall_ms, rescored});
    }
    const training::Rollout rl = training::evaluate_policy(shape, theta, env);
    const double rescored = mdp::score_trajectory(shape.region, shape.axis, rl.states, env.brush, env.features,
                                                  env.reward, mdp::CoverageMemory::Full)
                                .ret;
    rows.push_back({shape.name, "RL", 0, rl.scored.ret, rl.wall_ms, rescored});
  }
  return rows;
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
  out << "shape,method,candidates,return,time_ms\n";
  for (const auto& r : rows) {
    out << r.shape << ',' << r.method << ',' << r.candidates << ',' << format_double(r.ret) << ','
        << format_double(r.wall_ms) << '\n';
  }
}

}  // namespace inkstroke::dp
