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

#include "modcast/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "modcast/ensemble.hpp"

namespace modcast {

namespace {

constexpr std::int64_t kSceneIdStride = 1'000'000;
constexpr int kSceneFrameStride = 100'000;

bool in_range(Vec2 p, double range) { return norm(p) <= range; }

Vec2 gt_velocity(const GtAgent& g, int frame) {
  const GtSample* now = g.at(frame);
  const GtSample* prev = g.at(frame - 1);
  if (now == nullptr || prev == nullptr) return {0.0, 0.0};
  return now->box.center_xy() - prev->box.center_xy();
}

}  // namespace

std::vector<int> inference_frames(int scene_frames, const TimeBase& tb, int stride) {
  std::vector<int> out;
  for (int t = tb.past_steps(); t + tb.horizon_steps < scene_frames; t += stride) out.push_back(t);
  return out;
}

SceneData simulate_scene(const PipelineConfig& cfg, std::uint64_t seed) {
  SceneData data;
  data.scene = gen_scene(cfg.sim, seed);
  data.detections = flatten_frames(corrupt(data.scene, cfg.noise, seed));
  return data;
}

SceneData ensemble_scene(SceneData data, const EnsembleConfig& cfg) {
  auto frames = detections_by_frame(data);
  for (auto& f : frames) f = merge_frame(f, cfg);
  data.detections = flatten_frames(frames);
  return data;
}

SceneData track_scene(SceneData data, const TrackerConfig& cfg) {
  const auto frames = detections_by_frame(data);
  data.tracks = track_sequence(frames, 0, cfg);
  return data;
}

std::unique_ptr<Forecaster> make_forecaster(const PipelineConfig& cfg, const Scene& scene) {
  if (cfg.forecaster == ForecasterKind::kOracle) {
    return std::make_unique<OracleForecaster>(scene.agents, cfg.time().horizon_steps,
                                              cfg.metrics.match_threshold_m);
  }
  return std::make_unique<ConstantVelocityForecaster>(cfg.forecast);
}

SceneData forecast_scene(SceneData data, const PipelineConfig& cfg) {
  const auto forecaster = make_forecaster(cfg, data.scene);
  data.forecasts.clear();
  for (int t0 : inference_frames(data.scene.frames, cfg.time(), cfg.inference_stride)) {
    for (const auto& track : data.tracks) {
      const auto past = extract_past(track, t0, cfg.time(), cfg.interpolate);
      if (!past) continue;
      ForecastSet fs = forecaster->forecast(*past);
      if (cfg.post_process) fs = post_process(fs, *past, track.agent_class);
      data.forecasts.push_back({t0, track.id, track.agent_class, past->score, past->current_xy(),
                                std::move(fs)});
    }
  }
  return data;
}

std::vector<TrainingPair> match_scene(const SceneData& data, const PipelineConfig& cfg) {
  std::vector<TrainingPair> out;
  for (int t0 : inference_frames(data.scene.frames, cfg.time(), cfg.inference_stride)) {
    auto pairs = build_training_pairs(data.tracks, data.scene.agents, cfg.match, cfg.time(), t0,
                                      cfg.interpolate);
    out.insert(out.end(), std::make_move_iterator(pairs.begin()),
               std::make_move_iterator(pairs.end()));
  }
  return out;
}

void add_scene_to_eval(EvalInputs& inputs, const SceneData& data, const PipelineConfig& cfg,
                       int scene_index) {
  const double range = cfg.metrics.eval_range_m;
  const std::int64_t id_offset = kSceneIdStride * scene_index;
  const int frame_offset = kSceneFrameStride * scene_index;
  const int horizon = cfg.time().horizon_steps;

  for (int t0 : inference_frames(data.scene.frames, cfg.time(), cfg.inference_stride)) {
    const int sample = inputs.samples++;
    for (const auto& g : data.scene.agents) {
      const GtSample* now = g.at(t0);
      if (now == nullptr || !in_range(now->box.center_xy(), range)) continue;
      auto fut = gt_future(g, t0, horizon);
      if (!fut) continue;
      ForecastGt fg;
      fg.sample = sample;
      fg.id = g.id + id_offset;
      fg.agent_class = g.agent_class;
      fg.current = now->box.center_xy();
      fg.type = classify_trajectory(fg.current, *fut, gt_velocity(g, t0), cfg.metrics);
      fg.future = std::move(*fut);
      inputs.forecast_gts.push_back(std::move(fg));
    }
    for (const auto& r : data.forecasts) {
      if (r.frame != t0 || !in_range(r.current, range)) continue;
      inputs.predictions.push_back({sample, r.agent_class, r.score, r.current, r.forecast});
    }
  }

  for (const auto& g : data.scene.agents) {
    for (const auto& s : g.samples) {
      if (!in_range(s.box.center_xy(), range)) continue;
      inputs.gt_boxes.push_back(
          {s.frame + frame_offset, g.id + id_offset, g.agent_class, s.box.center_xy(), 1.0});
    }
  }
  for (const auto& t : data.tracks) {
    const Track reported = cfg.interpolate ? interpolate_gaps(t) : reported_points(t, false, false);
    for (const auto& p : reported.points) {
      if (p.kind == PointKind::kPropagated) continue;
      if (!in_range(p.box.center_xy(), range)) continue;
      inputs.track_boxes.push_back(
          {p.frame + frame_offset, t.id + id_offset, t.agent_class, p.box.center_xy(), p.score});
    }
  }
}

MetricReport evaluate(const EvalInputs& inputs, const MetricConfig& cfg) {
  MetricReport r;
  r.mapf = mapf(inputs.predictions, inputs.forecast_gts, cfg);
  r.displacement = displacement_summary(inputs.predictions, inputs.forecast_gts, cfg);
  r.hota = hota(inputs.track_boxes, inputs.gt_boxes, cfg);
  r.mota = mota(inputs.track_boxes, inputs.gt_boxes, cfg);
  r.amota = amota(inputs.track_boxes, inputs.gt_boxes, cfg);
  r.samples = inputs.samples;
  return r;
}

namespace {

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json("undefined");
}

}  // namespace

nlohmann::ordered_json report_to_json(const MetricReport& r, const PipelineConfig& cfg,
                                      std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["tool"] = "modcast";
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["scenes"] = r.scenes;
  j["samples"] = r.samples;

  nlohmann::ordered_json m;
  m["overall"] = opt(r.mapf.overall);
  for (TrajectoryType t : kAllTrajectoryTypes) m[std::string(trajectory_type_name(t))] = opt(r.mapf.per_type.at(t));
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const auto& [c, v] : r.mapf.per_class) per_class[std::string(class_name(c))] = opt(v);
  m["per_class"] = std::move(per_class);
  m["cells"] = r.mapf.cells;
  j["mapf"] = std::move(m);

  j["ade"] = opt(r.displacement.ade);
  j["fde"] = opt(r.displacement.fde);
  nlohmann::ordered_json ade_t, fde_t;
  for (TrajectoryType t : kAllTrajectoryTypes) {
    ade_t[std::string(trajectory_type_name(t))] = opt(r.displacement.ade_per_type.at(t));
    fde_t[std::string(trajectory_type_name(t))] = opt(r.displacement.fde_per_type.at(t));
  }
  j["ade_per_type"] = std::move(ade_t);
  j["fde_per_type"] = std::move(fde_t);
  j["forecast_matched"] = r.displacement.matched;

  j["hota"] = opt(r.hota ? std::optional<double>(r.hota->hota) : std::nullopt);
  j["deta"] = opt(r.hota ? std::optional<double>(r.hota->deta) : std::nullopt);
  j["assa"] = opt(r.hota ? std::optional<double>(r.hota->assa) : std::nullopt);
  j["mota"] = opt(r.mota ? std::optional<double>(r.mota->mota) : std::nullopt);
  j["mota_raw"] = r.mota ? nlohmann::ordered_json(r.mota->mota_raw) : nlohmann::ordered_json("undefined");
  j["amota"] = opt(r.amota);
  const ClearCounts c = r.mota ? r.mota->counts : ClearCounts{};
  j["counts"] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"ids", c.ids}, {"num_gt", c.num_gt}};
  j["config"] = config_to_json(cfg);
  return j;
}

SceneData run_scene(const PipelineConfig& cfg, std::uint64_t seed) {
  SceneData data = simulate_scene(cfg, seed);
  if (cfg.use_ensemble) data = ensemble_scene(std::move(data), cfg.ensemble);
  data = track_scene(std::move(data), cfg.tracker);
  return forecast_scene(std::move(data), cfg);
}

MetricReport run_pipeline(const PipelineConfig& cfg, std::uint64_t seed) {
  EvalInputs inputs;
  for (int s = 0; s < cfg.num_scenes; ++s) {
    const SceneData data = run_scene(cfg, seed + static_cast<std::uint64_t>(s));
    add_scene_to_eval(inputs, data, cfg, s);
  }
  MetricReport r = evaluate(inputs, cfg.metrics);
  r.scenes = cfg.num_scenes;
  return r;
}

}  // namespace modcast
