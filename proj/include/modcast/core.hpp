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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modcast {

/// Planar point / displacement in meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 v);

/// Wraps a finite angle into (-pi, pi]. Throws std::invalid_argument on NaN/inf.
double yaw_normalize(double angle);

/**
 * Oriented 3D box. Center (cx, cy, cz) and dimensions in meters, yaw in radians
 * around +z, normalized into (-pi, pi]. Use make_box() to get a validated box.
 */
struct Box3D {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  double length = 1.0;
  double width = 1.0;
  double height = 1.0;
  double yaw = 0.0;

  Vec2 center_xy() const { return {cx, cy}; }
  double volume() const { return length * width * height; }

  friend bool operator==(const Box3D&, const Box3D&) = default;
};

/// Validates dimensions (> 0, finite) and normalizes yaw. Throws std::invalid_argument.
Box3D make_box(double cx, double cy, double cz, double length, double width, double height,
               double yaw);
void validate_box(const Box3D& box);

/// Planar (x, y) distance between box centers; z is ignored.
double center_distance_2d(const Box3D& a, const Box3D& b);

/// The 26 annotated categories of the Argoverse 2 sensor dataset.
enum class AgentClass : std::uint8_t {
  kRegularVehicle,
  kPedestrian,
  kBicyclist,
  kMotorcyclist,
  kWheeledRider,
  kBollard,
  kConstructionCone,
  kSign,
  kConstructionBarrel,
  kStopSign,
  kMobilePedestrianCrossingSign,
  kLargeVehicle,
  kBus,
  kBoxTruck,
  kTruck,
  kVehicularTrailer,
  kTruckCab,
  kSchoolBus,
  kArticulatedBus,
  kMessageBoardTrailer,
  kBicycle,
  kMotorcycle,
  kWheeledDevice,
  kWheelchair,
  kStroller,
  kDog,
};

inline constexpr std::size_t kNumAgentClasses = 26;

const std::array<AgentClass, kNumAgentClasses>& all_agent_classes();

/// Canonical upper-case name, e.g. "REGULAR_VEHICLE".
std::string_view class_name(AgentClass c);
/// Inverse of class_name(); also accepts lower case. Throws std::invalid_argument.
AgentClass parse_agent_class(std::string_view name);

/// True for classes that never move (bollards, cones, barrels, signs, ...).
bool is_always_static(AgentClass c);

struct Detection {
  Box3D box;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  double score = 0.0;
  int frame = 0;
  std::optional<int> source_model;
};

/// Throws std::invalid_argument when score is outside [0, 1] or the box is invalid.
void validate_detection(const Detection& det);

struct TimeBase {
  double hz = 10.0;
  double past_window_s = 2.0;
  int horizon_steps = 30;

  /// past_window_s * hz, i.e. the number of history steps before t = 0.
  int past_steps() const;
};

void validate_time_base(const TimeBase& tb);

struct PastSample {
  int frame = 0;  ///< relative to the current frame, <= 0
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  bool observed = true;
};

/// History of one predicted agent, ending at the current frame (relative frame 0).
struct PastTrajectory {
  std::int64_t agent_id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  int current_frame = 0;  ///< absolute scene frame that relative frame 0 refers to
  double score = 1.0;     ///< detection confidence carried over from the tracker
  std::vector<PastSample> samples;

  const PastSample& current() const { return samples.back(); }
  Vec2 current_xy() const { return {samples.back().x, samples.back().y}; }
};

/// Throws std::invalid_argument unless samples are non-empty, strictly increasing and end at 0.
void validate_past(const PastTrajectory& past);

struct FutureTrajectory {
  std::vector<Vec2> waypoints;  ///< one per future step, 1/hz apart
};

struct ForecastMode {
  FutureTrajectory trajectory;
  double score = 0.0;
};

struct ForecastSet {
  std::vector<ForecastMode> modes;

  std::size_t k() const { return modes.size(); }
};

void validate_forecast(const ForecastSet& fs, int horizon_steps);

struct GtSample {
  int frame = 0;
  Box3D box;
};

/// Ground-truth agent over a scene; samples cover a contiguous frame range.
struct GtAgent {
  std::int64_t id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  std::vector<GtSample> samples;

  int first_frame() const { return samples.front().frame; }
  int last_frame() const { return samples.back().frame; }
  /// Sample at an absolute frame, or nullptr when outside the lifespan.
  const GtSample* at(int frame) const;
};

void validate_gt_agent(const GtAgent& agent);

}  // namespace modcast
