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

#include "modcast/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace modcast {

namespace {

enum Purpose : std::uint64_t {
  kMotion = 1,
  kClass = 2,
  kPlacement = 3,
  kDims = 4,
  kMiss = 10,
  kLocalization = 11,
  kScore = 12,
  kClutter = 13,
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

AgentClass draw_class(std::mt19937_64& rng, const std::map<AgentClass, double>& mix,
                      bool movable_only) {
  std::vector<AgentClass> classes;
  std::vector<double> weights;
  for (const auto& [c, w] : mix) {
    if (w <= 0.0 || (movable_only && is_always_static(c))) continue;
    classes.push_back(c);
    weights.push_back(w);
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  return classes[pick(rng)];
}

bool has_movable_class(const std::map<AgentClass, double>& mix) {
  return std::any_of(mix.begin(), mix.end(),
                     [](const auto& e) { return e.second > 0.0 && !is_always_static(e.first); });
}

}  // namespace

void validate_sim_config(const SimConfig& cfg) {
  validate_time_base(cfg.time);
  if (cfg.n_agents < 1) throw std::invalid_argument("sim: n_agents must be >= 1");
  for (double f : {cfg.fraction_static, cfg.fraction_linear, cfg.fraction_turning}) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("sim: fractions must lie in [0, 1]");
  }
  if (std::abs(cfg.fraction_static + cfg.fraction_linear + cfg.fraction_turning - 1.0) > 1e-9) {
    throw std::invalid_argument("sim: motion fractions must sum to 1");
  }
  if (!(cfg.speed_min > 0.0) || cfg.speed_max < cfg.speed_min) {
    throw std::invalid_argument("sim: invalid speed range");
  }
  if (!(cfg.turn_radius_min > 0.0) || cfg.turn_radius_max < cfg.turn_radius_min) {
    throw std::invalid_argument("sim: invalid turn radius range");
  }
  if (cfg.scene_len < cfg.time.past_steps() + cfg.time.horizon_steps + 1) {
    throw std::invalid_argument("sim: scene_len shorter than past window + horizon");
  }
  if (!(cfg.map_extent > 0.0) || cfg.min_separation < 0.0) {
    throw std::invalid_argument("sim: invalid map extent");
  }
  double total = 0.0;
  for (const auto& [c, w] : cfg.class_mix) {
    if (!(w >= 0.0)) throw std::invalid_argument("sim: class weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("sim: class mix is empty");
  if (cfg.fraction_static < 1.0 && !has_movable_class(cfg.class_mix)) {
    throw std::invalid_argument("sim: moving agents requested but only always-static classes");
  }
}

Pose2 motion_pose(const AgentMotion& m, double t) {
  switch (m.type) {
    case MotionType::kStatic: return {m.start, m.heading};
    case MotionType::kLinear: {
      const Vec2 dir{std::cos(m.heading), std::sin(m.heading)};
      return {m.start + (m.speed * t) * dir, m.heading};
    }
    case MotionType::kTurning: {
      const double s = static_cast<double>(m.turn_dir);
      const Vec2 normal{-s * std::sin(m.heading), s * std::cos(m.heading)};
      const Vec2 center = m.start + m.radius * normal;
      const double phi0 = std::atan2(m.start.y - center.y, m.start.x - center.x);
      const double omega = s * m.speed / m.radius;
      const double phi = phi0 + omega * t;
      return {{center.x + m.radius * std::cos(phi), center.y + m.radius * std::sin(phi)},
              m.heading + omega * t};
    }
  }
  return {m.start, m.heading};
}

NoiseConfig NoiseConfig::noiseless() {
  NoiseConfig n;
  n.p_fn = 0.0;
  n.fp_rate = 0.0;
  n.sigma_xy = n.sigma_z = n.sigma_yaw = n.sigma_dims = 0.0;
  n.s_lo_tp = 1.0;
  n.s_hi_fp = 0.0;
  return n;
}

void validate_noise_config(const NoiseConfig& n) {
  if (!(n.p_fn >= 0.0 && n.p_fn <= 1.0)) throw std::invalid_argument("noise: p_fn in [0, 1]");
  if (!(n.fp_rate >= 0.0)) throw std::invalid_argument("noise: fp_rate must be >= 0");
  for (double s : {n.sigma_xy, n.sigma_z, n.sigma_yaw, n.sigma_dims}) {
    if (!(s >= 0.0)) throw std::invalid_argument("noise: sigmas must be >= 0");
  }
  if (!(n.s_lo_tp >= 0.0 && n.s_lo_tp <= 1.0) || !(n.s_hi_fp >= 0.0 && n.s_hi_fp <= 1.0)) {
    throw std::invalid_argument("noise: score bounds must lie in [0, 1]");
  }
  if (n.n_models < 1) throw std::invalid_argument("noise: n_models must be >= 1");
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::int64_t frame, std::int64_t agent,
                           std::uint64_t purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(frame));
  h = splitmix64(h ^ static_cast<std::uint64_t>(agent));
  h = splitmix64(h ^ purpose);
  return std::mt19937_64(h);
}

std::array<double, 3> nominal_dimensions(AgentClass c) {
  switch (c) {
    case AgentClass::kRegularVehicle: return {4.6, 1.9, 1.6};
    case AgentClass::kPedestrian: return {0.7, 0.7, 1.75};
    case AgentClass::kBicyclist:
    case AgentClass::kBicycle: return {1.8, 0.7, 1.7};
    case AgentClass::kMotorcyclist:
    case AgentClass::kMotorcycle: return {2.1, 0.8, 1.6};
    case AgentClass::kWheeledRider:
    case AgentClass::kWheeledDevice: return {1.0, 0.6, 1.5};
    case AgentClass::kBollard: return {0.3, 0.3, 1.0};
    case AgentClass::kConstructionCone: return {0.45, 0.45, 0.75};
    case AgentClass::kConstructionBarrel: return {0.6, 0.6, 1.0};
    case AgentClass::kSign:
    case AgentClass::kStopSign: return {0.6, 0.2, 2.2};
    case AgentClass::kMobilePedestrianCrossingSign: return {0.6, 0.3, 1.2};
    case AgentClass::kLargeVehicle: return {7.0, 2.5, 3.0};
    case AgentClass::kBus:
    case AgentClass::kSchoolBus: return {11.5, 2.6, 3.2};
    case AgentClass::kArticulatedBus: return {18.0, 2.6, 3.2};
    case AgentClass::kBoxTruck: return {7.5, 2.4, 3.2};
    case AgentClass::kTruck: return {9.0, 2.5, 3.5};
    case AgentClass::kVehicularTrailer: return {6.0, 2.4, 2.8};
    case AgentClass::kTruckCab: return {6.0, 2.5, 3.3};
    case AgentClass::kMessageBoardTrailer: return {3.5, 2.0, 3.0};
    case AgentClass::kWheelchair: return {1.1, 0.7, 1.3};
    case AgentClass::kStroller: return {0.9, 0.6, 1.1};
    case AgentClass::kDog: return {0.9, 0.35, 0.6};
  }
  return {2.0, 1.0, 1.5};
}

double max_class_speed(AgentClass c) {
  switch (c) {
    case AgentClass::kPedestrian:
    case AgentClass::kWheelchair:
    case AgentClass::kStroller: return 2.0;
    case AgentClass::kDog: return 4.0;
    case AgentClass::kBicyclist:
    case AgentClass::kBicycle:
    case AgentClass::kWheeledRider:
    case AgentClass::kWheeledDevice: return 7.0;
    default: return 1e9;
  }
}

Scene gen_scene(const SimConfig& cfg, std::uint64_t seed) {
  validate_sim_config(cfg);
  Scene scene;
  scene.scene_id = "sim-" + std::to_string(seed);
  scene.hz = cfg.time.hz;
  scene.frames = cfg.scene_len;

  const int n = cfg.n_agents;
  const int n_static = static_cast<int>(std::lround(cfg.fraction_static * n));
  const int n_linear = std::min(n - n_static, static_cast<int>(std::lround(cfg.fraction_linear * n)));

  std::vector<Vec2> placed;
  for (int i = 0; i < n; ++i) {
    AgentMotion m;
    m.type = i < n_static ? MotionType::kStatic
             : i < n_static + n_linear ? MotionType::kLinear
                                       : MotionType::kTurning;

    auto class_rng = stream_rng(seed, 0, i, kClass);
    const AgentClass cls = draw_class(class_rng, cfg.class_mix, m.type != MotionType::kStatic);

    auto place_rng = stream_rng(seed, 0, i, kPlacement);
    std::uniform_real_distribution<double> coord(-cfg.map_extent, cfg.map_extent);
    Vec2 p{coord(place_rng), coord(place_rng)};
    for (int attempt = 0; attempt < 200; ++attempt) {
      const bool clear = std::all_of(placed.begin(), placed.end(), [&](Vec2 q) {
        return norm(p - q) >= cfg.min_separation;
      });
      if (clear) break;
      p = {coord(place_rng), coord(place_rng)};
    }
    placed.push_back(p);
    m.start = p;

    auto motion_rng = stream_rng(seed, 0, i, kMotion);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    m.heading = yaw_normalize(2.0 * std::numbers::pi * unit(motion_rng) - std::numbers::pi);
    if (m.type != MotionType::kStatic) {
      const double hi = std::min(cfg.speed_max, max_class_speed(cls));
      const double lo = std::min(cfg.speed_min, 0.5 * hi);
      m.speed = lo + (hi - lo) * unit(motion_rng);
    }
    if (m.type == MotionType::kTurning) {
      m.radius = cfg.turn_radius_min + (cfg.turn_radius_max - cfg.turn_radius_min) * unit(motion_rng);
      m.turn_dir = unit(motion_rng) < 0.5 ? 1 : -1;
    }

    auto dim_rng = stream_rng(seed, 0, i, kDims);
    std::uniform_real_distribution<double> jitter(0.9, 1.1);
    const auto nominal = nominal_dimensions(cls);
    const double l = nominal[0] * jitter(dim_rng);
    const double w = nominal[1] * jitter(dim_rng);
    const double h = nominal[2] * jitter(dim_rng);

    GtAgent agent;
    agent.id = i;
    agent.agent_class = cls;
    agent.samples.reserve(static_cast<std::size_t>(cfg.scene_len));
    for (int f = 0; f < cfg.scene_len; ++f) {
      const Pose2 pose = motion_pose(m, f / cfg.time.hz);
      agent.samples.push_back({f, make_box(pose.xy.x, pose.xy.y, 0.5 * h, l, w, h, pose.yaw)});
    }
    scene.agents.push_back(std::move(agent));
    scene.motions.push_back(m);
  }
  return scene;
}

std::vector<std::vector<Detection>> corrupt(const Scene& scene, const NoiseConfig& noise,
                                            std::uint64_t seed) {
  validate_noise_config(noise);
  std::vector<std::vector<Detection>> out(static_cast<std::size_t>(scene.frames));

  std::map<AgentClass, double> clutter_mix;
  for (const auto& a : scene.agents) clutter_mix[a.agent_class] += 1.0;
  if (clutter_mix.empty()) clutter_mix[AgentClass::kRegularVehicle] = 1.0;
  double extent = 1.0;
  for (const auto& a : scene.agents) {
    for (const auto& s : a.samples) extent = std::max({extent, std::abs(s.box.cx), std::abs(s.box.cy)});
  }

  for (int f = 0; f < scene.frames; ++f) {
    auto& frame_dets = out[static_cast<std::size_t>(f)];
    for (int model = 0; model < noise.n_models; ++model) {
      const std::uint64_t model_seed = seed * 1000003ULL + static_cast<std::uint64_t>(model);
      for (const auto& agent : scene.agents) {
        const GtSample* s = agent.at(f);
        if (s == nullptr) continue;
        auto miss_rng = stream_rng(model_seed, f, agent.id, kMiss);
        if (std::bernoulli_distribution(noise.p_fn)(miss_rng)) continue;

        auto loc_rng = stream_rng(model_seed, f, agent.id, kLocalization);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Box3D b = s->box;
        b.cx += noise.sigma_xy * gauss(loc_rng);
        b.cy += noise.sigma_xy * gauss(loc_rng);
        b.cz += noise.sigma_z * gauss(loc_rng);
        b.yaw = yaw_normalize(b.yaw + noise.sigma_yaw * gauss(loc_rng));
        b.length = std::max(0.05, b.length + noise.sigma_dims * gauss(loc_rng));
        b.width = std::max(0.05, b.width + noise.sigma_dims * gauss(loc_rng));
        b.height = std::max(0.05, b.height + noise.sigma_dims * gauss(loc_rng));

        auto score_rng = stream_rng(model_seed, f, agent.id, kScore);
        const double score =
            noise.s_lo_tp + (1.0 - noise.s_lo_tp) * std::uniform_real_distribution<double>(0.0, 1.0)(score_rng);

        frame_dets.push_back({b, agent.agent_class, score, f, model});
      }

      auto clutter_rng = stream_rng(model_seed, f, -1, kClutter);
      const int n_fp = noise.fp_rate > 0.0
                           ? std::poisson_distribution<int>(noise.fp_rate)(clutter_rng)
                           : 0;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int k = 0; k < n_fp; ++k) {
        const AgentClass cls = draw_class(clutter_rng, clutter_mix, false);
        const auto dims = nominal_dimensions(cls);
        const double x = extent * (2.0 * unit(clutter_rng) - 1.0);
        const double y = extent * (2.0 * unit(clutter_rng) - 1.0);
        const double yaw = std::numbers::pi * (2.0 * unit(clutter_rng) - 1.0);
        const double score = noise.s_hi_fp * unit(clutter_rng);
        frame_dets.push_back(
            {make_box(x, y, 0.5 * dims[2], dims[0], dims[1], dims[2], yaw), cls, score, f, model});
      }
    }
  }
  return out;
}

}  // namespace modcast
