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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "modcast/matcher.hpp"
#include "modcast/sim.hpp"
#include "modcast/tracker.hpp"

namespace modcast {

/// Malformed input data. `line` is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Forecast for one track at one inference frame.
struct ForecastRecord {
  int frame = 0;
  std::int64_t track_id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  double score = 0.0;
  Vec2 current;
  ForecastSet forecast;
};

/**
 * Contents of a scene file: one JSON record per line, header first, then
 * records grouped by frame. Record kinds: header, gt, det, trk, fc.
 */
struct SceneData {
  Scene scene;                            ///< header fields and gt agents
  std::vector<Detection> detections;      ///< all frames, frame-ordered
  std::vector<Track> tracks;              ///< points only; filter state is not stored
  std::vector<ForecastRecord> forecasts;
};

/// Detections regrouped per frame, index = frame.
std::vector<std::vector<Detection>> detections_by_frame(const SceneData& data);
std::vector<Detection> flatten_frames(const std::vector<std::vector<Detection>>& frames);

void write_scene(std::ostream& out, const SceneData& data);
SceneData read_scene(std::istream& in);

void write_scene_file(const std::string& path, const SceneData& data);
SceneData read_scene_file(const std::string& path);

/// Training-pair file: a header line followed by one "pair" record per line.
void write_pairs(std::ostream& out, const std::string& scene_id,
                 const std::vector<TrainingPair>& pairs);
std::vector<TrainingPair> read_pairs(std::istream& in);

std::string point_kind_name(PointKind k);
PointKind parse_point_kind(const std::string& s);

}  // namespace modcast
