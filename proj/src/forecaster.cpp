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

#include "modcast/forecaster.hpp"

#include <cmath>
#include <stdexcept>

#include "modcast/matcher.hpp"

namespace modcast {

std::vector<double> ForecastConfig::default_fan(int k) {
  std::vector<double> out;
  for (int i = 1; i < k; ++i) out.push_back((i % 2 == 1 ? 0.2 : -0.2) * ((i + 1) / 2));
  return out;
}

void validate_forecast_config(const ForecastConfig& cfg) {
  if (cfg.k_modes < 2) throw std::invalid_argument("k_modes must be >= 2");
  if (cfg.horizon_steps < 1) throw std::invalid_argument("horizon_steps must be >= 1");
  if (static_cast<int>(cfg.fan_angles.size()) != cfg.k_modes - 1) {
    throw std::invalid_argument("fan_angles must hold k_modes - 1 entries");
  }
}

Vec2 estimate_velocity(const PastTrajectory& past) {
  const auto& s = past.samples;
  if (s.size() < 2) return {0.0, 0.0};
  double t_mean = 0.0, x_mean = 0.0, y_mean = 0.0;
  for (const auto& p : s) {
    t_mean += p.frame;
    x_mean += p.x;
    y_mean += p.y;
  }
  const double n = static_cast<double>(s.size());
  t_mean /= n;
  x_mean /= n;
  y_mean /= n;
  double stt = 0.0, stx = 0.0, sty = 0.0;
  for (const auto& p : s) {
    const double dt = p.frame - t_mean;
    stt += dt * dt;
    stx += dt * (p.x - x_mean);
    sty += dt * (p.y - y_mean);
  }
  return {stx / stt, sty / stt};
}

FutureTrajectory static_future(Vec2 anchor, int horizon_steps) {
  return FutureTrajectory{std::vector<Vec2>(static_cast<std::size_t>(horizon_steps), anchor)};
}

bool is_static_at(const FutureTrajectory& traj, Vec2 anchor) {
  for (const auto& w : traj.waypoints) {
    if (!(w == anchor)) return false;
  }
  return true;
}

ForecastSet forecast_cv(const PastTrajectory& past, const ForecastConfig& cfg) {
  validate_forecast_config(cfg);
  validate_past(past);
  const Vec2 anchor = past.current_xy();
  const Vec2 v = estimate_velocity(past);

  ForecastSet out;
  out.modes.reserve(static_cast<std::size_t>(cfg.k_modes));
  for (int m = 0; m < cfg.k_modes; ++m) {
    Vec2 vm = v;
    if (m > 0) {
      const double a = cfg.fan_angles[static_cast<std::size_t>(m - 1)];
      vm = {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y};
    }
    ForecastMode mode;
    mode.score = m == 0 ? 0.5 : 0.5 / (cfg.k_modes - 1);
    mode.trajectory.waypoints.reserve(static_cast<std::size_t>(cfg.horizon_steps));
    for (int k = 1; k <= cfg.horizon_steps; ++k) {
      mode.trajectory.waypoints.push_back(anchor + static_cast<double>(k) * vm);
    }
    out.modes.push_back(std::move(mode));
  }
  return out;
}

ConstantVelocityForecaster::ConstantVelocityForecaster(ForecastConfig cfg) : cfg_(std::move(cfg)) {
  validate_forecast_config(cfg_);
}

ForecastSet ConstantVelocityForecaster::forecast(const PastTrajectory& past) const {
  return forecast_cv(past, cfg_);
}

OracleForecaster::OracleForecaster(std::span<const GtAgent> gts, int horizon_steps, double gate)
    : gts_(gts.begin(), gts.end()), horizon_steps_(horizon_steps), gate_(gate) {}

ForecastSet OracleForecaster::forecast(const PastTrajectory& past) const {
  validate_past(past);
  const GtAgent* best = nullptr;
  double best_d = gate_;
  for (const auto& g : gts_) {
    if (g.agent_class != past.agent_class) continue;
    const auto d = past_distance(past, g, DistanceMode::kAtT0);
    if (d && *d <= best_d && (best == nullptr || *d < best_d || g.id < best->id)) {
      best = &g;
      best_d = *d;
    }
  }
  ForecastSet out;
  std::optional<FutureTrajectory> fut;
  if (best != nullptr) fut = gt_future(*best, past.current_frame, horizon_steps_);
  out.modes.push_back(
      {fut ? std::move(*fut) : static_future(past.current_xy(), horizon_steps_), 1.0});
  return out;
}

ForecastSet post_process(const ForecastSet& forecasts, const PastTrajectory& past,
                         AgentClass agent_class) {
  if (forecasts.modes.empty()) throw std::invalid_argument("post_process: no modes");
  const Vec2 anchor = past.current_xy();
  const int horizon = static_cast<int>(forecasts.modes.front().trajectory.waypoints.size());

  if (is_always_static(agent_class)) {
    ForecastSet out;
    out.modes.push_back({static_future(anchor, horizon), 1.0});
    return out;
  }
  for (const auto& m : forecasts.modes) {
    if (m.score == 1.0 && is_static_at(m.trajectory, anchor)) return forecasts;
  }
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < forecasts.modes.size(); ++i) {
    if (forecasts.modes[i].score <= forecasts.modes[weakest].score) weakest = i;
  }
  ForecastSet out = forecasts;
  out.modes[weakest] = {static_future(anchor, horizon), 1.0};
  return out;
}

}  // namespace modcast
