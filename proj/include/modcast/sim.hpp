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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "modcast/core.hpp"

namespace modcast {

enum class MotionType : std::uint8_t { kStatic, kLinear, kTurning };

struct SimConfig {
  int n_agents = 24;
  double fraction_static = 0.4;
  double fraction_linear = 0.4;
  double fraction_turning = 0.2;
  double speed_min = 2.0;         ///< m/s
  double speed_max = 10.0;        ///< m/s, further capped per class
  double turn_radius_min = 8.0;   ///< m
  double turn_radius_max = 30.0;  ///< m
  int scene_len = 80;             ///< frames
  double map_extent = 40.0;       ///< agents start in [-extent, extent]^2
  double min_separation = 4.0;    ///< m between initial positions
  std::map<AgentClass, double> class_mix{
      {AgentClass::kRegularVehicle, 0.45}, {AgentClass::kPedestrian, 0.2},
      {AgentClass::kBicyclist, 0.1},       {AgentClass::kBollard, 0.1},
      {AgentClass::kConstructionCone, 0.1}, {AgentClass::kBus, 0.05}};
  TimeBase time;
};

void validate_sim_config(const SimConfig& cfg);

/// Closed-form motion of one simulated agent.
struct AgentMotion {
  MotionType type = MotionType::kStatic;
  Vec2 start;
  double heading = 0.0;   ///< initial heading, radians
  double speed = 0.0;     ///< m/s
  double radius = 0.0;    ///< turning only
  int turn_dir = 1;       ///< +1 left (counter-clockwise), -1 right
};

struct Pose2 {
  Vec2 xy;
  double yaw = 0.0;
};

/// Pose after `t` seconds; arcs follow the circle of `radius` tangent to the initial heading.
Pose2 motion_pose(const AgentMotion& m, double t);

struct Scene {
  std::string scene_id;
  double hz = 10.0;
  int frames = 0;
  std::vector<GtAgent> agents;
  std::vector<AgentMotion> motions;  ///< parallel to agents; empty for loaded scenes
};

struct NoiseConfig {
  double p_fn = 0.1;        ///< per-box miss probability
  double fp_rate = 1.0;     ///< expected clutter boxes per frame (Poisson)
  double sigma_xy = 0.1;
  double sigma_z = 0.05;
  double sigma_yaw = 0.05;
  double sigma_dims = 0.05;
  double s_lo_tp = 0.5;     ///< true-positive scores ~ U[s_lo_tp, 1]
  double s_hi_fp = 0.5;     ///< clutter scores ~ U[0, s_hi_fp]
  int n_models = 1;         ///< independent detector outputs per frame

  static NoiseConfig noiseless();
};

void validate_noise_config(const NoiseConfig& cfg);

/// Independent generator for one (seed, frame, agent, purpose) address.
std::mt19937_64 stream_rng(std::uint64_t seed, std::int64_t frame, std::int64_t agent,
                           std::uint64_t purpose);

/// Nominal (length, width, height) for a class.
std::array<double, 3> nominal_dimensions(AgentClass c);
/// Upper bound on simulated speed for a class, m/s.
double max_class_speed(AgentClass c);

Scene gen_scene(const SimConfig& cfg, std::uint64_t seed);

/// Per-frame detections (index = frame) with misses, clutter and localization noise.
std::vector<std::vector<Detection>> corrupt(const Scene& scene, const NoiseConfig& noise,
                                            std::uint64_t seed);

}  // namespace modcast
