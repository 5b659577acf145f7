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
#include <string>

#include <json.hpp>

#include "modcast/ensemble.hpp"
#include "modcast/forecaster.hpp"
#include "modcast/matcher.hpp"
#include "modcast/metrics.hpp"
#include "modcast/sim.hpp"
#include "modcast/tracker.hpp"

namespace modcast {

inline constexpr const char* kToolVersion = "0.3.0";

enum class ForecasterKind : std::uint8_t { kConstantVelocity, kOracle };

/// Everything a pipeline run needs. `sim.time` is the shared time base.
struct PipelineConfig {
  SimConfig sim;
  NoiseConfig noise;
  EnsembleConfig ensemble;
  TrackerConfig tracker;
  MatchConfig match;
  ForecastConfig forecast;
  MetricConfig metrics;

  bool use_ensemble = true;
  bool interpolate = true;
  bool post_process = true;
  ForecasterKind forecaster = ForecasterKind::kConstantVelocity;
  int inference_stride = 10;  ///< frames between consecutive inference frames
  int num_scenes = 1;

  const TimeBase& time() const { return sim.time; }
};

/// Copies the shared horizon into dependent configs and validates every section.
void finalize_config(PipelineConfig& cfg);

/**
 * Overlays a JSON document onto `cfg`. Unknown keys are rejected so that typos
 * in ablation configs fail loudly. Throws std::invalid_argument.
 */
void apply_config_json(PipelineConfig& cfg, const nlohmann::json& doc);
void apply_config_file(PipelineConfig& cfg, const std::string& path);

nlohmann::ordered_json config_to_json(const PipelineConfig& cfg);

std::string to_string(AssignmentMode m);
std::string to_string(DistanceMode m);
std::string to_string(ForecasterKind k);
AssignmentMode parse_assignment_mode(const std::string& s);
DistanceMode parse_distance_mode(const std::string& s);
ForecasterKind parse_forecaster_kind(const std::string& s);

}  // namespace modcast
