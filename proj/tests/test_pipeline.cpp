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

#include <doctest.h>

#include <stdexcept>

#include "modcast/pipeline.hpp"

using namespace modcast;

namespace {

PipelineConfig oracle_config() {
  PipelineConfig cfg;
  cfg.noise = NoiseConfig::noiseless();
  cfg.use_ensemble = false;
  cfg.forecaster = ForecasterKind::kOracle;
  cfg.post_process = false;
  finalize_config(cfg);
  return cfg;
}

}  // namespace

TEST_CASE("inference frames leave room for past and horizon") {
  TimeBase tb;
  CHECK(inference_frames(80, tb, 10) == std::vector<int>{20, 30, 40});
  CHECK(inference_frames(50, tb, 10).empty());
}

TEST_CASE("oracle pipeline hits the metric ceiling") {
  const MetricReport r = run_pipeline(oracle_config(), 7);
  CHECK(*r.mapf.overall == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.hota->hota == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.mota->mota == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*r.amota == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*r.displacement.ade == 0.0);
  CHECK(*r.displacement.fde == 0.0);
}

TEST_CASE("report is deterministic and bounded") {
  PipelineConfig cfg;
  cfg.num_scenes = 2;
  finalize_config(cfg);
  const auto a = report_to_json(run_pipeline(cfg, 3), cfg, 3).dump(2);
  const auto b = report_to_json(run_pipeline(cfg, 3), cfg, 3).dump(2);
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  for (const char* key : {"hota", "deta", "assa", "mota", "amota"}) {
    REQUIRE(j.at(key).is_number());
    CHECK(j.at(key).get<double>() >= 0.0);
    CHECK(j.at(key).get<double>() <= 1.0);
  }
  CHECK(j.at("mapf").contains("non_linear"));
  CHECK(j.at("tool_version") == kToolVersion);
  CHECK(j.at("config").at("pipeline").at("num_scenes") == 2);
}

TEST_CASE("undefined metrics are reported as such") {
  const PipelineConfig cfg = oracle_config();
  MetricReport empty = evaluate(EvalInputs{}, cfg.metrics);
  const auto j = report_to_json(empty, cfg, 0);
  CHECK(j.at("mapf").at("overall") == "undefined");
  CHECK(j.at("hota") == "undefined");
  CHECK(j.at("ade") == "undefined");
}

TEST_CASE("ensemble merges multi-model copies") {
  PipelineConfig cfg = oracle_config();
  cfg.noise.n_models = 3;
  SceneData d = simulate_scene(cfg, 4);
  const std::size_t raw = d.detections.size();
  d = ensemble_scene(std::move(d), cfg.ensemble);
  CHECK(d.detections.size() * 3 <= raw);
  CHECK(detections_by_frame(d)[0].size() == d.scene.agents.size());
}

TEST_CASE("config layering rejects unknown keys") {
  PipelineConfig cfg;
  CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"tracker":{"iou":0.3}})")),
                  std::invalid_argument);
  apply_config_json(cfg, nlohmann::json::parse(R"({"tracker":{"iou_gate":0.3},"match":{"assignment":"one-one"}})"));
  CHECK(cfg.tracker.iou_gate == 0.3);
  CHECK(cfg.match.assignment == AssignmentMode::kOneToOne);
  CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"match":{"distance":"far"}})")),
                  std::invalid_argument);
}
