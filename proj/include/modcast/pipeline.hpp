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

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "modcast/config.hpp"
#include "modcast/scene_io.hpp"

namespace modcast {

/// Inference frames t0 with a full past window and a full horizon inside the scene.
std::vector<int> inference_frames(int scene_frames, const TimeBase& tb, int stride);

/// simulate: ground truth plus raw detections of all models.
SceneData simulate_scene(const PipelineConfig& cfg, std::uint64_t seed);

/// ensemble: per-frame greedy fusion of every model's detections.
SceneData ensemble_scene(SceneData data, const EnsembleConfig& cfg);

/// track: replaces the scene's tracks with a fresh tracker run over its detections.
SceneData track_scene(SceneData data, const TrackerConfig& cfg);

std::unique_ptr<Forecaster> make_forecaster(const PipelineConfig& cfg, const Scene& scene);

/// forecast: one record per track alive at each inference frame.
SceneData forecast_scene(SceneData data, const PipelineConfig& cfg);

/// match: training pairs over every inference frame.
std::vector<TrainingPair> match_scene(const SceneData& data, const PipelineConfig& cfg);

/// Forecasting and tracking evaluation inputs for one or more scenes.
struct EvalInputs {
  std::vector<ForecastPrediction> predictions;
  std::vector<ForecastGt> forecast_gts;
  std::vector<EvalBox> track_boxes;
  std::vector<EvalBox> gt_boxes;
  int samples = 0;
};

/// Appends `data` to `inputs`; ids and frames are offset so scenes never collide.
void add_scene_to_eval(EvalInputs& inputs, const SceneData& data, const PipelineConfig& cfg,
                       int scene_index);

struct MetricReport {
  MapfResult mapf;
  DisplacementSummary displacement;
  std::optional<HotaResult> hota;
  std::optional<MotaResult> mota;
  std::optional<double> amota;
  int scenes = 0;
  int samples = 0;
};

MetricReport evaluate(const EvalInputs& inputs, const MetricConfig& cfg);

/// Structured report: scores in [0, 1] or the string "undefined".
nlohmann::ordered_json report_to_json(const MetricReport& report, const PipelineConfig& cfg,
                                      std::uint64_t seed);

/// simulate -> ensemble -> track -> forecast(+post-process) for one seed.
SceneData run_scene(const PipelineConfig& cfg, std::uint64_t seed);

/// Full pipeline over cfg.num_scenes consecutive seeds starting at `seed`.
MetricReport run_pipeline(const PipelineConfig& cfg, std::uint64_t seed);

}  // namespace modcast
