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

#include "modcast/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace modcast {

namespace {

struct ClassInfo {
  AgentClass value;
  std::string_view name;
  bool always_static;
};

constexpr std::array<ClassInfo, kNumAgentClasses> kClassTable{{
    {AgentClass::kRegularVehicle, "REGULAR_VEHICLE", false},
    {AgentClass::kPedestrian, "PEDESTRIAN", false},
    {AgentClass::kBicyclist, "BICYCLIST", false},
    {AgentClass::kMotorcyclist, "MOTORCYCLIST", false},
    {AgentClass::kWheeledRider, "WHEELED_RIDER", false},
    {AgentClass::kBollard, "BOLLARD", true},
    {AgentClass::kConstructionCone, "CONSTRUCTION_CONE", true},
    {AgentClass::kSign, "SIGN", true},
    {AgentClass::kConstructionBarrel, "CONSTRUCTION_BARREL", true},
    {AgentClass::kStopSign, "STOP_SIGN", false},
    {AgentClass::kMobilePedestrianCrossingSign, "MOBILE_PEDESTRIAN_CROSSING_SIGN", true},
    {AgentClass::kLargeVehicle, "LARGE_VEHICLE", false},
    {AgentClass::kBus, "BUS", false},
    {AgentClass::kBoxTruck, "BOX_TRUCK", false},
    {AgentClass::kTruck, "TRUCK", false},
    {AgentClass::kVehicularTrailer, "VEHICULAR_TRAILER", false},
    {AgentClass::kTruckCab, "TRUCK_CAB", false},
    {AgentClass::kSchoolBus, "SCHOOL_BUS", false},
    {AgentClass::kArticulatedBus, "ARTICULATED_BUS", false},
    {AgentClass::kMessageBoardTrailer, "MESSAGE_BOARD_TRAILER", true},
    {AgentClass::kBicycle, "BICYCLE", false},
    {AgentClass::kMotorcycle, "MOTORCYCLE", false},
    {AgentClass::kWheeledDevice, "WHEELED_DEVICE", false},
    {AgentClass::kWheelchair, "WHEELCHAIR", false},
    {AgentClass::kStroller, "STROLLER", false},
    {AgentClass::kDog, "DOG", false},
}};

const ClassInfo& info(AgentClass c) {
  const auto idx = static_cast<std::size_t>(c);
  if (idx >= kClassTable.size()) throw std::invalid_argument("invalid AgentClass value");
  return kClassTable[idx];
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double yaw_normalize(double angle) {
  require_finite(angle, "angle");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

Box3D make_box(double cx, double cy, double cz, double length, double width, double height,
               double yaw) {
  Box3D b{cx, cy, cz, length, width, height, 0.0};
  b.yaw = yaw_normalize(yaw);
  validate_box(b);
  return b;
}

void validate_box(const Box3D& b) {
  require_finite(b.cx, "cx");
  require_finite(b.cy, "cy");
  require_finite(b.cz, "cz");
  require_finite(b.yaw, "yaw");
  for (double d : {b.length, b.width, b.height}) {
    require_finite(d, "box dimension");
    if (d <= 0.0) throw std::invalid_argument("box dimensions must be > 0");
  }
  if (b.yaw <= -std::numbers::pi || b.yaw > std::numbers::pi) {
    throw std::invalid_argument("box yaw must be normalized into (-pi, pi]");
  }
}

double center_distance_2d(const Box3D& a, const Box3D& b) {
  return std::hypot(a.cx - b.cx, a.cy - b.cy);
}

const std::array<AgentClass, kNumAgentClasses>& all_agent_classes() {
  static const std::array<AgentClass, kNumAgentClasses> all = [] {
    std::array<AgentClass, kNumAgentClasses> out{};
    for (std::size_t i = 0; i < kClassTable.size(); ++i) out[i] = kClassTable[i].value;
    return out;
  }();
  return all;
}

std::string_view class_name(AgentClass c) { return info(c).name; }

AgentClass parse_agent_class(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  std::replace(upper.begin(), upper.end(), ' ', '_');
  for (const auto& entry : kClassTable) {
    if (entry.name == upper) return entry.value;
  }
  throw std::invalid_argument("unknown agent class '" + std::string(name) + "'");
}

bool is_always_static(AgentClass c) { return info(c).always_static; }

void validate_detection(const Detection& det) {
  validate_box(det.box);
  if (!(det.score >= 0.0 && det.score <= 1.0)) {
    throw std::invalid_argument("detection score must lie in [0, 1]");
  }
}

int TimeBase::past_steps() const { return static_cast<int>(std::lround(past_window_s * hz)); }

void validate_time_base(const TimeBase& tb) {
  if (!(tb.hz > 0.0) || !std::isfinite(tb.hz)) throw std::invalid_argument("hz must be > 0");
  if (!(tb.past_window_s >= 0.0)) throw std::invalid_argument("past_window_s must be >= 0");
  const double steps = tb.past_window_s * tb.hz;
  if (std::abs(steps - std::round(steps)) > 1e-9) {
    throw std::invalid_argument("past_window_s * hz must be an integer");
  }
  if (tb.horizon_steps < 1) throw std::invalid_argument("horizon_steps must be >= 1");
}

void validate_past(const PastTrajectory& past) {
  if (past.samples.empty()) throw std::invalid_argument("past trajectory is empty");
  for (std::size_t i = 1; i < past.samples.size(); ++i) {
    if (past.samples[i].frame <= past.samples[i - 1].frame) {
      throw std::invalid_argument("past trajectory frames must be strictly increasing");
    }
  }
  if (past.samples.back().frame != 0) {
    throw std::invalid_argument("past trajectory must end at relative frame 0");
  }
}

void validate_forecast(const ForecastSet& fs, int horizon_steps) {
  if (fs.modes.empty()) throw std::invalid_argument("forecast set has no modes");
  for (const auto& m : fs.modes) {
    if (static_cast<int>(m.trajectory.waypoints.size()) != horizon_steps) {
      throw std::invalid_argument("forecast mode length differs from horizon");
    }
    if (!(m.score >= 0.0)) throw std::invalid_argument("mode score must be >= 0");
  }
}

const GtSample* GtAgent::at(int frame) const {
  if (samples.empty() || frame < first_frame() || frame > last_frame()) return nullptr;
  return &samples[static_cast<std::size_t>(frame - first_frame())];
}

void validate_gt_agent(const GtAgent& agent) {
  if (agent.samples.empty()) throw std::invalid_argument("gt agent has no samples");
  for (std::size_t i = 0; i < agent.samples.size(); ++i) {
    validate_box(agent.samples[i].box);
    if (i > 0 && agent.samples[i].frame != agent.samples[i - 1].frame + 1) {
      throw std::invalid_argument("gt agent frames must be contiguous");
    }
  }
}

}  // namespace modcast
