#include "inkstroke/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "inkstroke/dp_baseline.hpp"
#include "inkstroke/format.hpp"
#include "inkstroke/shapes.hpp"

namespace inkstroke::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      config_error("unknown key \"" + key + "\" in " + where);
    }
  }
}

void read(const json& obj, const char* key, double& dst) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number()) config_error(std::string("\"") + key + "\" must be a number");
  dst = obj[key].get<double>();
}

void read(const json& obj, const char* key, int& dst) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number_integer()) config_error(std::string("\"") + key + "\" must be an integer");
  dst = obj[key].get<int>();
}

void read(const json& obj, const char* key, std::uint64_t& dst) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_number_unsigned()) config_error(std::string("\"") + key + "\" must be a non-negative integer");
  dst = obj[key].get<std::uint64_t>();
}

void read(const json& obj, const char* key, std::string& dst) {
  if (!obj.contains(key)) return;
  if (!obj[key].is_string()) config_error(std::string("\"") + key + "\" must be a string");
  dst = obj[key].get<std::string>();
}

template <typename T>
void read_list(const json& obj, const char* key, std::vector<T>& dst) {
  if (!obj.contains(key)) return;
  const json& arr = obj[key];
  if (!arr.is_array()) config_error(std::string("\"") + key + "\" must be an array");
  dst.clear();
  for (const json& v : arr) {
    if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) config_error(std::string("\"") + key + "\" must hold integers");
    } else {
      if (!v.is_string()) config_error(std::string("\"") + key + "\" must hold strings");
    }
    dst.push_back(v.get<T>());
  }
}

std::string style_name(render::InkStyle s) { return s == render::InkStyle::Fade ? "fade" : "solid"; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
  f << text;
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
  fn(f);
}

json load_json(const fs::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, std::string("cannot open ") + what + " " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    config_error(std::string(what) + " " + path.string() + " is not valid JSON: " + e.what());
  }
}

policy::PolicyParams load_policy(const RunConfig& cfg) {
  if (cfg.checkpoint.empty()) return cfg.train.initial;
  return policy::params_from_checkpoint(load_json(cfg.checkpoint, "checkpoint"));
}

std::string curve_svg(const std::vector<training::IterationRecord>& trace) {
  const double w = 640.0, h = 360.0, pad = 40.0;
  double top = 0.0;
  for (const auto& r : trace) top = std::max(top, r.avg_return);
  if (top <= 0.0) top = 1.0;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"360\" viewBox=\"0 0 640 360\">\n"
      << "<g fill=\"none\" stroke=\"#555555\" stroke-width=\"1\">\n<path d=\"M 40 40 L 40 320 L 600 320\"/>\n</g>\n"
      << "<g fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\">\n<path d=\"";
  const double span = std::max<std::size_t>(trace.size(), 2) - 1;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.3f %.3f", k ? " L " : "M ", pad + (w - 2 * pad) * k / span,
                  h - pad - (h - 2 * pad) * trace[k].avg_return / top);
    svg << buf;
  }
  svg << "\"/>\n</g>\n</svg>\n";
  return svg.str();
}

std::vector<brush::Footprint> footprints_of(const std::vector<brush::BrushState>& states) {
  std::vector<brush::Footprint> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.footprint);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_train(const RunConfig& cfg, std::ostream& out) {
  const auto shapes = resolve_shapes(cfg);
  const fs::path dir(cfg.out);
  training::TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  tc.threads = cfg.threads;
  const auto result = training::train(tc, shapes, [&](const training::IterationRecord& r, const policy::PolicyParams&) {
    out << "iteration " << r.iteration << "  avg_return " << format_double(r.avg_return) << "  sigma "
        << format_double(r.theta.sigma) << '\n';
  });
  write_file(dir / "trace.csv", [&](std::ostream& f) { training::write_trace_csv(f, result.trace); });
  write_file(dir / "timing.csv", [&](std::ostream& f) { training::write_timing_csv(f, result.trace); });
  write_text(dir / "checkpoint.json", policy::checkpoint_json(result.final_theta, tc.iterations).dump(1) + "\n");
  write_text(dir / "learning_curve.svg", curve_svg(result.trace));
  out << "wrote " << (dir / "trace.csv").string() << " and " << (dir / "checkpoint.json").string() << '\n';
  return kOk;
}

int cmd_draw(const RunConfig& cfg, std::ostream& out, bool render_files) {
  const auto shapes = resolve_shapes(cfg);
  const policy::PolicyParams theta = load_policy(cfg);
  const fs::path dir(cfg.out);
  std::ostringstream table;
  table << "shape,steps,reached_goal,return\n";
  for (const auto& shape : shapes) {
    const training::Rollout r = training::evaluate_policy(shape, theta, cfg.train.env, cfg.max_steps);
    const int moves = static_cast<int>(r.states.size()) - 1;
    table << shape.name << ',' << moves << ',' << (r.reached_goal ? 1 : 0) << ',' << format_double(r.scored.ret) << '\n';
    out << shape.name << ": return " << format_double(r.scored.ret) << " over " << moves << " steps"
        << (r.reached_goal ? ", goal reached" : ", goal not reached") << '\n';
    if (!render_files) continue;
    const auto footprints = footprints_of(r.states);
    const render::StrokeImage img = render::render_stroke(footprints, cfg.render);
    write_text(dir / (shape.name + ".svg"), img.svg);
    write_file(dir / (shape.name + ".pgm"), [&](std::ostream& f) { render::write_pgm(f, img.raster); });
    render::StepTrace trace{r.scored.rewards, r.scored.blocked};
    write_text(dir / (shape.name + "_debug.svg"), render::render_debug(footprints, shape.region, shape.axis, trace, cfg.render));
  }
  write_text(dir / (render_files ? "draw.csv" : "evaluation.csv"), table.str());
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const auto shapes = resolve_shapes(cfg);
  const policy::PolicyParams theta = load_policy(cfg);
  const auto rows = dp::compare_rl_dp(shapes, theta, cfg.candidates, cfg.train.env);
  for (const auto& r : rows) {
    out << r.shape << "  " << r.method;
    if (r.method == "DP") out << " K=" << r.candidates;
    out << "  return " << format_double(r.ret) << "  time_ms " << format_double(r.wall_ms) << '\n';
    if (std::abs(r.ret - r.rescored) > 1e-6 * std::max(1.0, std::abs(r.ret))) {
      throw std::runtime_error("re-scored return disagrees for " + r.shape + " " + r.method);
    }
  }
  write_file(fs::path(cfg.out) / "comparison.csv", [&](std::ostream& f) { dp::write_comparison_csv(f, rows); });
  return kOk;
}

int cmd_gen_shapes(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.out);
  std::vector<fs::path> written;
  const std::vector<std::string> presets = cfg.presets.empty() ? shapes::preset_names() : cfg.presets;
  if (!presets.empty()) fs::create_directories(dir / "presets");
  for (const auto& id : presets) {
    const fs::path p = dir / "presets" / (id + ".json");
    shapes::save_region(p, shapes::generate_shape(shapes::preset(id)));
    written.push_back(p);
  }
  const bool combine = !cfg.uppers.empty() || !cfg.commons.empty() || !cfg.lowers.empty();
  if (combine) {
    const auto pick = [](const std::vector<std::string>& v, std::vector<std::string> all) { return v.empty() ? all : v; };
    const auto uppers = pick(cfg.uppers, shapes::upper_variants());
    const auto commons = pick(cfg.commons, shapes::common_variants());
    const auto lowers = pick(cfg.lowers, shapes::lower_variants());
    fs::create_directories(dir / "combined");
    for (const auto& u : uppers) {
      for (const auto& c : commons) {
        for (const auto& l : lowers) {
          const fs::path p = dir / "combined" / (u + "+" + c + "+" + l + ".json");
          shapes::save_region(p, shapes::combine_shapes(shapes::segment_variant(u), shapes::segment_variant(c),
                                                        shapes::segment_variant(l)));
          written.push_back(p);
        }
      }
    }
  }
  for (const auto& p : written) shapes::load_region(p);
  out << "wrote " << written.size() << " shape files under " << dir.string() << '\n';
  return kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig config_from_json(const json& doc) {
  check_keys(doc, "config", {"seed", "threads", "out", "shapes", "resolution", "train", "reward", "brush", "features",
                             "render", "checkpoint", "candidates", "max_steps", "gen"});
  RunConfig c;
  read(doc, "seed", c.seed);
  read(doc, "threads", c.threads);
  read(doc, "out", c.out);
  read_list(doc, "shapes", c.shapes);
  read(doc, "resolution", c.resolution);
  read(doc, "checkpoint", c.checkpoint);
  read_list(doc, "candidates", c.candidates);
  read(doc, "max_steps", c.max_steps);
  if (doc.contains("train")) {
    const json& t = doc["train"];
    check_keys(t, "\"train\"", {"episodes", "steps", "iterations", "step_norm", "learning_rate", "initial_sigma"});
    read(t, "episodes", c.train.episodes);
    read(t, "steps", c.train.steps);
    read(t, "iterations", c.train.iterations);
    read(t, "step_norm", c.train.update.step_norm);
    if (t.contains("learning_rate") && !t["learning_rate"].is_null()) {
      double lr = 0.0;
      read(t, "learning_rate", lr);
      c.train.update.fixed_lr = lr;
    }
    read(t, "initial_sigma", c.train.initial.sigma);
  }
  if (doc.contains("reward")) {
    const json& r = doc["reward"];
    check_keys(r, "\"reward\"",
               {"lambda1", "lambda2", "tau1", "tau2", "zeta1", "zeta2", "zeta3", "W", "gamma", "denom_eps"});
    auto& p = c.train.env.reward;
    read(r, "lambda1", p.lambda1);
    read(r, "lambda2", p.lambda2);
    read(r, "tau1", p.tau1);
    read(r, "tau2", p.tau2);
    read(r, "zeta1", p.zeta1);
    read(r, "zeta2", p.zeta2);
    read(r, "zeta3", p.zeta3);
    read(r, "W", p.W);
    read(r, "gamma", p.gamma);
    read(r, "denom_eps", p.denom_eps);
  }
  if (doc.contains("brush")) {
    const json& b = doc["brush"];
    check_keys(b, "\"brush\"", {"beta", "eta", "r_min_cells"});
    read(b, "beta", c.train.env.brush.beta);
    read(b, "eta", c.train.env.brush.eta);
    read(b, "r_min_cells", c.train.env.brush.r_min_cells);
  }
  if (doc.contains("features")) {
    check_keys(doc["features"], "\"features\"", {"alpha"});
    read(doc["features"], "alpha", c.train.env.features.alpha);
  }
  if (doc.contains("render")) {
    const json& r = doc["render"];
    check_keys(r, "\"render\"", {"pixels_per_unit", "margin", "style", "end_ink"});
    read(r, "pixels_per_unit", c.render.pixels_per_unit);
    read(r, "margin", c.render.margin);
    read(r, "end_ink", c.render.end_ink);
    std::string style = style_name(c.render.style);
    read(r, "style", style);
    if (style == "solid") {
      c.render.style = render::InkStyle::Solid;
    } else if (style == "fade") {
      c.render.style = render::InkStyle::Fade;
    } else {
      config_error("render style must be \"solid\" or \"fade\", got \"" + style + "\"");
    }
  }
  if (doc.contains("gen")) {
    const json& g = doc["gen"];
    check_keys(g, "\"gen\"", {"presets", "uppers", "commons", "lowers"});
    read_list(g, "presets", c.presets);
    read_list(g, "uppers", c.uppers);
    read_list(g, "commons", c.commons);
    read_list(g, "lowers", c.lowers);
  }
  c.train.env.features.beta = c.train.env.brush.beta;
  return c;
}

json config_to_json(const RunConfig& c) {
  json doc;
  doc["seed"] = c.seed;
  doc["threads"] = c.threads;
  doc["out"] = c.out;
  doc["shapes"] = c.shapes;
  doc["resolution"] = c.resolution;
  doc["checkpoint"] = c.checkpoint;
  doc["candidates"] = c.candidates;
  doc["max_steps"] = c.max_steps;
  doc["train"] = {{"episodes", c.train.episodes},
                  {"steps", c.train.steps},
                  {"iterations", c.train.iterations},
                  {"step_norm", c.train.update.step_norm},
                  {"learning_rate", c.train.update.fixed_lr ? json(*c.train.update.fixed_lr) : json(nullptr)},
                  {"initial_sigma", c.train.initial.sigma}};
  const auto& r = c.train.env.reward;
  doc["reward"] = {{"lambda1", r.lambda1}, {"lambda2", r.lambda2}, {"tau1", r.tau1},   {"tau2", r.tau2},
                   {"zeta1", r.zeta1},     {"zeta2", r.zeta2},     {"zeta3", r.zeta3}, {"W", r.W},
                   {"gamma", r.gamma},     {"denom_eps", r.denom_eps}};
  doc["brush"] = {{"beta", c.train.env.brush.beta},
                  {"eta", c.train.env.brush.eta},
                  {"r_min_cells", c.train.env.brush.r_min_cells}};
  doc["features"] = {{"alpha", c.train.env.features.alpha}};
  doc["render"] = {{"pixels_per_unit", c.render.pixels_per_unit},
                   {"margin", c.render.margin},
                   {"style", style_name(c.render.style)},
                   {"end_ink", c.render.end_ink}};
  doc["gen"] = {{"presets", c.presets}, {"uppers", c.uppers}, {"commons", c.commons}, {"lowers", c.lowers}};
  return doc;
}

std::vector<training::TrainingShape> resolve_shapes(const RunConfig& config) {
  const std::vector<std::string> presets = shapes::preset_names();
  const std::vector<std::string> names = config.shapes.empty() ? presets : config.shapes;
  std::vector<training::TrainingShape> out;
  for (const auto& name : names) {
    if (std::find(presets.begin(), presets.end(), name) != presets.end()) {
      out.push_back(training::prepare_shape(name, shapes::generate_shape(shapes::preset(name)), config.resolution));
    } else {
      const fs::path path(name);
      if (!fs::exists(path)) throw Error(ErrorCode::Io, "shape file not found: " + path.string());
      out.push_back(training::prepare_shape(path.stem().string(), shapes::load_region(path), config.resolution));
    }
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Brush-stroke drawing agent: train, draw, evaluate, compare, gen-shapes"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads, episodes, steps, iterations;
  std::vector<int> candidates;
  std::vector<std::string> shape_args;
  std::optional<std::string> checkpoint;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (outputs do not depend on it)")->check(CLI::PositiveNumber);
    sub->add_option("--shape", shape_args, "preset id or shape JSON file (repeatable)");
  };
  auto add_policy = [&](CLI::App* sub) { sub->add_option("--checkpoint", checkpoint, "policy checkpoint JSON"); };

  CLI::App* train = app.add_subcommand("train", "train the policy and write trace.csv and checkpoint.json");
  add_common(train);
  train->add_option("--episodes", episodes, "episodes per iteration (N)");
  train->add_option("--steps", steps, "steps per episode (T)");
  train->add_option("--iterations", iterations, "policy updates (M)");
  CLI::App* draw = app.add_subcommand("draw", "mean-action rollout on each shape, rendered to SVG and PGM");
  add_common(draw);
  add_policy(draw);
  CLI::App* evaluate = app.add_subcommand("evaluate", "mean-action rollout returns per shape");
  add_common(evaluate);
  add_policy(evaluate);
  CLI::App* compare = app.add_subcommand("compare", "RL rollout against the DP planner for each K");
  add_common(compare);
  add_policy(compare);
  compare->add_option("--candidates", candidates, "DP candidate counts")->delimiter(',');
  CLI::App* gen = app.add_subcommand("gen-shapes", "write preset and combined shapes as JSON files");
  add_common(gen);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : config_from_json(load_json(config_path, "config"));
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out = *out_dir;
    if (threads) cfg.threads = *threads;
    if (episodes) cfg.train.episodes = *episodes;
    if (steps) cfg.train.steps = *steps;
    if (iterations) cfg.train.iterations = *iterations;
    if (!candidates.empty()) cfg.candidates = candidates;
    if (!shape_args.empty()) cfg.shapes = shape_args;
    if (checkpoint) cfg.checkpoint = *checkpoint;
    cfg.train.seed = cfg.seed;
    cfg.train.threads = cfg.threads;
    cfg.train.validate();
    for (int k : cfg.candidates) {
      if (k < 2) config_error("DP candidate counts must be >= 2");
    }

    fs::create_directories(cfg.out);
    write_text(fs::path(cfg.out) / "effective_config.json", config_to_json(cfg).dump(1) + "\n");

    if (train->parsed()) return cmd_train(cfg, out);
    if (draw->parsed()) return cmd_draw(cfg, out, true);
    if (evaluate->parsed()) return cmd_draw(cfg, out, false);
    if (compare->parsed()) return cmd_compare(cfg, out);
    return cmd_gen_shapes(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_config_error() ? kConfigError : kRuntimeError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace inkstroke::cli
