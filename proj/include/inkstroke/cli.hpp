#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "inkstroke/render.hpp"
#include "inkstroke/training.hpp"

namespace inkstroke::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

/// Everything a command needs. Defaults follow the training setup of the
/// method (N = 300, T = 32, sigma0 = 2, step norm 0.1) and the reward weights.
struct RunConfig {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "run";
  /// Preset ids or shape-file paths; empty selects every preset.
  std::vector<std::string> shapes;
  /// Medial-axis grid cell; 0 picks 1/100 of each shape's short side.
  double resolution = 0.0;

  training::TrainConfig train;
  render::RenderOptions render;
  std::string checkpoint;
  std::vector<int> candidates{2, 4, 8, 16, 32};
  /// Step cap for mean-action rollouts; 0 derives one from the axis length.
  int max_steps = 0;

  std::vector<std::string> presets;  ///< gen-shapes; empty selects every preset
  std::vector<std::string> uppers;   ///< gen-shapes combinations
  std::vector<std::string> commons;
  std::vector<std::string> lowers;
};

/// Throws InvalidConfig on unknown keys or wrongly typed values.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

/// Resolves preset ids and shape files into prepared shapes. A name that is a
/// preset id selects the preset; anything else is read as a file path.
std::vector<training::TrainingShape> resolve_shapes(const RunConfig& config);

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inkstroke::cli
