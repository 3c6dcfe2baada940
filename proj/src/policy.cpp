#include "inkstroke/policy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "inkstroke/error.hpp"

namespace inkstroke::policy {

double PolicyParams::mean(const Features& s) const {
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) m += mu[i] * s[i];
  return m;
}

double Gradient::squared_norm() const {
  double acc = sigma * sigma;
  for (double v : mu) acc += v * v;
  return acc;
}

double Gradient::norm() const { return std::sqrt(squared_norm()); }

Gradient& Gradient::operator+=(const Gradient& o) {
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += o.mu[i];
  sigma += o.sigma;
  return *this;
}

Gradient& Gradient::operator*=(double s) {
  for (double& v : mu) v *= s;
  sigma *= s;
  return *this;
}

double clamp_action(double a) {
  constexpr double pi = std::numbers::pi;
  if (a > pi) return pi;
  if (a <= -pi) return std::nextafter(-pi, 0.0);
  return a;
}

ActionSample sample_action(const Features& s, const PolicyParams& theta, Rng& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  ActionSample out;
  out.raw = theta.mean(s) + theta.sigma * noise(rng);
  out.clamped = clamp_action(out.raw);
  return out;
}

double log_policy(const Features& s, double a, const PolicyParams& theta) {
  const double z = (a - theta.mean(s)) / theta.sigma;
  return -0.5 * z * z - std::log(theta.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

Gradient log_policy_grad(const Features& s, double a, const PolicyParams& theta) {
  const double diff = a - theta.mean(s);
  const double var = theta.sigma * theta.sigma;
  Gradient g;
  for (std::size_t i = 0; i < s.size(); ++i) g.mu[i] = diff / var * s[i];
  g.sigma = (diff * diff - var) / (var * theta.sigma);
  return g;
}

Gradient episode_score(const EpisodeHistory& h, const PolicyParams& theta) {
  Gradient g;
  for (const Step& st : h.steps) g += log_policy_grad(st.state, st.action, theta);
  return g;
}

BaselineResult optimal_baseline(std::span<const EpisodeHistory> histories, const PolicyParams& theta) {
  if (histories.empty()) throw std::invalid_argument("optimal_baseline needs at least one history");
  double num = 0.0;
  double den = 0.0;
  double mean_return = 0.0;
  for (const EpisodeHistory& h : histories) {
    const double w = episode_score(h, theta).squared_norm();
    num += h.ret * w;
    den += w;
    mean_return += h.ret;
  }
  mean_return /= static_cast<double>(histories.size());
  if (!(den > 0.0)) return {mean_return, true};
  return {num / den, false};
}

Gradient estimate_gradient(std::span<const EpisodeHistory> histories, const PolicyParams& theta, double baseline) {
  if (histories.empty()) throw std::invalid_argument("estimate_gradient needs at least one history");
  Gradient total;
  for (const EpisodeHistory& h : histories) {
    Gradient g = episode_score(h, theta);
    g *= h.ret - baseline;
    total += g;
  }
  total *= 1.0 / static_cast<double>(histories.size());
  return total;
}

UpdateResult update(const PolicyParams& theta, const Gradient& grad, const UpdateRule& rule) {
  const double norm = grad.norm();
  if (!std::isfinite(norm)) throw std::invalid_argument("policy gradient is not finite");
  if (norm < 1e-12) return {theta, true};
  const double lr = rule.fixed_lr ? *rule.fixed_lr : rule.step_norm / norm;
  UpdateResult out{theta, false};
  for (std::size_t i = 0; i < theta.mu.size(); ++i) out.params.mu[i] += lr * grad.mu[i];
  out.params.sigma = std::max(theta.sigma + lr * grad.sigma, kSigmaMin);
  return out;
}

nlohmann::json checkpoint_json(const PolicyParams& theta, int iteration) {
  nlohmann::json doc;
  doc["mu"] = theta.mu;
  doc["sigma"] = theta.sigma;
  doc["iteration"] = iteration;
  return doc;
}

PolicyParams params_from_checkpoint(const nlohmann::json& doc, int* iteration) {
  if (!doc.is_object() || !doc.contains("mu") || !doc.contains("sigma")) {
    throw Error(ErrorCode::InvalidConfig, "checkpoint needs \"mu\" and \"sigma\"");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "mu" && key != "sigma" && key != "iteration") {
      throw Error(ErrorCode::InvalidConfig, "unknown checkpoint key \"" + key + "\"");
    }
  }
  const auto& mu = doc.at("mu");
  if (!mu.is_array() || mu.size() != 6) throw Error(ErrorCode::InvalidConfig, "checkpoint \"mu\" must hold 6 numbers");
  PolicyParams theta;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!mu[i].is_number()) throw Error(ErrorCode::InvalidConfig, "checkpoint \"mu\" must hold 6 numbers");
    theta.mu[i] = mu[i].get<double>();
  }
  if (!doc.at("sigma").is_number()) throw Error(ErrorCode::InvalidConfig, "checkpoint \"sigma\" must be a number");
  theta.sigma = doc.at("sigma").get<double>();
  if (!(theta.sigma >= kSigmaMin) || !std::isfinite(theta.sigma)) {
    throw Error(ErrorCode::InvalidConfig, "checkpoint sigma must be finite and >= 1e-3");
  }
  for (double v : theta.mu) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidConfig, "checkpoint mu must be finite");
  }
  if (iteration) *iteration = doc.value("iteration", 0);
  return theta;
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ b);
}

}  // namespace inkstroke::policy
