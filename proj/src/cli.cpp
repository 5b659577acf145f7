/* Copyright 2026 The modcast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "modcast/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "modcast/pipeline.hpp"
#include "modcast/render.hpp"

namespace modcast {

namespace {

struct Common {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::string config;
};

/// Flags that overlay the configuration after the config file.
struct Overrides {
  std::optional<int> n_agents, n_models, scenes, k_modes, max_inactive, stride;
  std::optional<double> p_fn, fp_rate, sigma_xy, radius, iou_gate, gate;
  std::optional<std::string> assignment, distance, forecaster;
  std::optional<bool> post_process, ensemble, interpolate;
  bool noiseless = false;
};

void add_common(CLI::App* app, Common& c, bool needs_input) {
  auto* in = app->add_option("-i,--input", c.input, "input scene file");
  if (needs_input) in->required();
  app->add_option("-o,--output", c.output, "output file (default: stdout)");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--config", c.config, "JSON configuration file");
}

PipelineConfig build_config(const Common& c, const Overrides& o) {
  PipelineConfig cfg;
  if (!c.config.empty()) apply_config_file(cfg, c.config);
  if (o.noiseless) cfg.noise = NoiseConfig::noiseless();
  if (o.n_agents) cfg.sim.n_agents = *o.n_agents;
  if (o.n_models) cfg.noise.n_models = *o.n_models;
  if (o.p_fn) cfg.noise.p_fn = *o.p_fn;
  if (o.fp_rate) cfg.noise.fp_rate = *o.fp_rate;
  if (o.sigma_xy) cfg.noise.sigma_xy = *o.sigma_xy;
  if (o.radius) cfg.ensemble.radius = *o.radius;
  if (o.iou_gate) cfg.tracker.iou_gate = *o.iou_gate;
  if (o.max_inactive) cfg.tracker.max_inactive_frames = *o.max_inactive;
  if (o.assignment) cfg.match.assignment = parse_assignment_mode(*o.assignment);
  if (o.distance) cfg.match.distance = parse_distance_mode(*o.distance);
  if (o.gate) cfg.match.gate = *o.gate;
  if (o.k_modes) cfg.forecast.k_modes = *o.k_modes;
  if (o.forecaster) cfg.forecaster = parse_forecaster_kind(*o.forecaster);
  if (o.post_process) cfg.post_process = *o.post_process;
  if (o.ensemble) cfg.use_ensemble = *o.ensemble;
  if (o.interpolate) cfg.interpolate = *o.interpolate;
  if (o.scenes) cfg.num_scenes = *o.scenes;
  if (o.stride) cfg.inference_stride = *o.stride;
  if (o.k_modes && cfg.forecast.fan_angles.size() + 1 != static_cast<std::size_t>(*o.k_modes)) {
    cfg.forecast.fan_angles = ForecastConfig::default_fan(*o.k_modes);
  }
  finalize_config(cfg);
  return cfg;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string scene_text(const SceneData& d) {
  std::ostringstream s;
  write_scene(s, d);
  return s.str();
}

/// Reads the input scene; DataError messages gain the file name.
SceneData load(const std::string& path) {
  try {
    return read_scene_file(path);
  } catch (const DataError& e) {
    throw DataError(e.line(), path + ": " + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modcast: end-to-end detection, tracking and forecasting toolkit", "modcast"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common c;
  Overrides o;
  std::optional<int> frame;

  auto* simulate = app.add_subcommand("simulate", "generate a scene with noisy detections");
  add_common(simulate, c, false);
  simulate->add_option("--agents", o.n_agents, "number of agents");
  simulate->add_option("--models", o.n_models, "number of detector models");
  simulate->add_option("--p-fn", o.p_fn, "miss probability");
  simulate->add_option("--fp-rate", o.fp_rate, "clutter boxes per frame");
  simulate->add_option("--sigma-xy", o.sigma_xy, "center noise (m)");
  simulate->add_flag("--noiseless", o.noiseless, "emit ground-truth boxes as detections");

  auto* ensemble = app.add_subcommand("ensemble", "fuse the detections of several models");
  add_common(ensemble, c, true);
  ensemble->add_option("--radius", o.radius, "fusion radius (m)");

  auto* track = app.add_subcommand("track", "run the tracker over the detections");
  add_common(track, c, true);
  track->add_option("--iou-gate", o.iou_gate, "association IoU threshold");
  track->add_option("--max-inactive", o.max_inactive, "frames a track may stay inactive");

  auto* match = app.add_subcommand("match", "build training pairs from tracks and ground truth");
  add_common(match, c, true);
  match->add_option("--assignment", o.assignment, "one-one | many-one");
  match->add_option("--distance", o.distance, "t0 | all");
  match->add_option("--gate", o.gate, "matching distance (m)");
  match->add_option("--interpolate", o.interpolate, "fill gaps in predicted pasts");

  auto* forecast = app.add_subcommand("forecast", "forecast every track at the inference frames");
  add_common(forecast, c, true);
  forecast->add_option("--forecaster", o.forecaster, "cv | oracle");
  forecast->add_option("--modes", o.k_modes, "number of modes K");
  forecast->add_option("--post-process", o.post_process, "inject static modes");
  forecast->add_option("--interpolate", o.interpolate, "fill gaps in predicted pasts");
  forecast->add_option("--stride", o.stride, "frames between inference frames");

  auto* evaluate = app.add_subcommand("evaluate", "score forecasts and tracks against ground truth");
  add_common(evaluate, c, true);
  evaluate->add_option("--interpolate", o.interpolate, "report interpolated track points");
  evaluate->add_option("--stride", o.stride, "frames between inference frames");

  auto* pipeline = app.add_subcommand("pipeline", "simulate, track, forecast and evaluate");
  add_common(pipeline, c, false);
  pipeline->add_option("--scenes", o.scenes, "number of scenes (seeds seed, seed+1, ...)");
  pipeline->add_option("--agents", o.n_agents, "number of agents");
  pipeline->add_option("--models", o.n_models, "number of detector models");
  pipeline->add_option("--p-fn", o.p_fn, "miss probability");
  pipeline->add_option("--forecaster", o.forecaster, "cv | oracle");
  pipeline->add_option("--post-process", o.post_process, "inject static modes");
  pipeline->add_option("--ensemble", o.ensemble, "fuse multi-model detections");
  pipeline->add_option("--interpolate", o.interpolate, "interpolate track gaps");
  pipeline->add_flag("--noiseless", o.noiseless, "perfect detections");

  auto* render = app.add_subcommand("render", "draw one frame as an SVG bird's-eye view");
  add_common(render, c, true);
  render->add_option("--frame", frame, "frame to draw");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_s, e_s;
    const int code = app.exit(e, o_s, e_s);
    out << o_s.str();
    err << e_s.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  PipelineConfig cfg;
  try {
    cfg = build_config(c, o);
  } catch (const std::exception& e) {
    err << "modcast: error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      emit(c.output, scene_text(simulate_scene(cfg, c.seed)), out);
    } else if (ensemble->parsed()) {
      emit(c.output, scene_text(ensemble_scene(load(c.input), cfg.ensemble)), out);
    } else if (track->parsed()) {
      emit(c.output, scene_text(track_scene(load(c.input), cfg.tracker)), out);
    } else if (forecast->parsed()) {
      emit(c.output, scene_text(forecast_scene(load(c.input), cfg)), out);
    } else if (match->parsed()) {
      const SceneData d = load(c.input);
      std::ostringstream s;
      write_pairs(s, d.scene.scene_id, match_scene(d, cfg));
      emit(c.output, s.str(), out);
    } else if (evaluate->parsed()) {
      EvalInputs inputs;
      add_scene_to_eval(inputs, load(c.input), cfg, 0);
      MetricReport r = modcast::evaluate(inputs, cfg.metrics);
      r.scenes = 1;
      emit(c.output, report_to_json(r, cfg, c.seed).dump(2) + "\n", out);
    } else if (pipeline->parsed()) {
      const MetricReport r = run_pipeline(cfg, c.seed);
      emit(c.output, report_to_json(r, cfg, c.seed).dump(2) + "\n", out);
    } else if (render->parsed()) {
      RenderOptions ro;
      ro.frame = frame;
      emit(c.output, render_svg(load(c.input), ro), out);
    }
  } catch (const DataError& e) {
    err << "modcast: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "modcast: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "modcast: error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace modcast
