#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace inkstroke::policy {

using Features = std::array<double, 6>;
using Rng = std::mt19937_64;

inline constexpr double kSigmaMin = 1e-3;

/// theta = (mu, sigma) of the Gaussian policy a ~ N(mu . s, sigma^2).
struct PolicyParams {
  std::array<double, 6> mu{};
  double sigma = 2.0;

  /// mu = 0, sigma = 2.
  static PolicyParams initial() { return {}; }
  double mean(const Features& s) const;
  bool operator==(const PolicyParams&) const = default;
};

/// Gradient with respect to (mu, sigma); also used for score vectors.
struct Gradient {
  std::array<double, 6> mu{};
  double sigma = 0.0;

  double squared_norm() const;
  double norm() const;
  Gradient& operator+=(const Gradient& o);
  Gradient& operator*=(double s);
};

struct Step {
  Features state{};
  /// Raw Gaussian draw; the environment receives the clamped angle.
  double action = 0.0;
  double reward = 0.0;
};

struct EpisodeHistory {
  std::vector<Step> steps;
  Features terminal{};
  /// Discounted return R(h).
  double ret = 0.0;
};

struct ActionSample {
  double raw = 0.0;
  double clamped = 0.0;
};

/// Clamps an angle into (-pi, pi].
double clamp_action(double a);

ActionSample sample_action(const Features& s, const PolicyParams& theta, Rng& rng);

/// log N(a; mu . s, sigma^2).
double log_policy(const Features& s, double a, const PolicyParams& theta);

/// d/dmu = (a - mu.s) s / sigma^2,  d/dsigma = ((a - mu.s)^2 - sigma^2) / sigma^3.
Gradient log_policy_grad(const Features& s, double a, const PolicyParams& theta);

/// Sum over the episode of the per-step log-policy gradients.
Gradient episode_score(const EpisodeHistory& h, const PolicyParams& theta);

struct BaselineResult {
  double value = 0.0;
  /// Every episode score vanished; value is the mean return instead.
  bool zero_score = false;
};

/// b* = sum R(h_n) |g_n|^2 / sum |g_n|^2 with g_n the episode score.
BaselineResult optimal_baseline(std::span<const EpisodeHistory> histories, const PolicyParams& theta);

/// (1/N) sum_n (R(h_n) - b) g_n.
Gradient estimate_gradient(std::span<const EpisodeHistory> histories, const PolicyParams& theta, double baseline);

struct UpdateRule {
  /// Normalized ascent: every update moves theta by exactly this distance.
  double step_norm = 0.1;
  /// Plain gradient ascent with this learning rate instead, when set.
  std::optional<double> fixed_lr;
};

struct UpdateResult {
  PolicyParams params;
  /// |grad| < 1e-12; params returned unchanged.
  bool zero_gradient = false;
};

UpdateResult update(const PolicyParams& theta, const Gradient& grad, const UpdateRule& rule = {});

/// Checkpoint document {"mu": [6], "sigma": s, "iteration": m}.
nlohmann::json checkpoint_json(const PolicyParams& theta, int iteration);
/// Throws InvalidConfig on a malformed document.
PolicyParams params_from_checkpoint(const nlohmann::json& doc, int* iteration = nullptr);

/// Stateless seed mixing (splitmix64 over the inputs) for per-episode streams.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace inkstroke::policy
