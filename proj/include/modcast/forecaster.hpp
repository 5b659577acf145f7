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

#include <span>
#include <vector>

#include "modcast/core.hpp"

namespace modcast {

struct ForecastConfig {
  int k_modes = 5;
  int horizon_steps = 30;
  /// Heading offsets (radians) applied to the velocity for modes 1..K-1.
  std::vector<double> fan_angles{0.2, -0.2, 0.4, -0.4};

  /// +0.2, -0.2, +0.4, -0.4, ... for modes 1..k-1.
  static std::vector<double> default_fan(int k);
};

void validate_forecast_config(const ForecastConfig& cfg);

/// Produces K scored future modes for one agent from its (possibly imperfect) past.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual ForecastSet forecast(const PastTrajectory& past) const = 0;
};

/// Least-squares velocity (meters per frame) over the past samples; zero for a single sample.
Vec2 estimate_velocity(const PastTrajectory& past);

/// Every waypoint at `anchor`.
FutureTrajectory static_future(Vec2 anchor, int horizon_steps);

bool is_static_at(const FutureTrajectory& traj, Vec2 anchor);

/**
 * Constant-velocity multi-modal baseline. Mode 0 extrapolates the fitted
 * velocity from the current position, mode i rotates it by fan_angles[i-1].
 * Scores are 0.5 for mode 0 and an equal share of 0.5 for the others.
 */
ForecastSet forecast_cv(const PastTrajectory& past, const ForecastConfig& cfg);

class ConstantVelocityForecaster final : public Forecaster {
 public:
  explicit ConstantVelocityForecaster(ForecastConfig cfg);
  ForecastSet forecast(const PastTrajectory& past) const override;

 private:
  ForecastConfig cfg_;
};

/**
 * Calibration-only forecaster that looks up the true future of the nearest
 * same-class ground-truth agent at the current frame. Returns a single mode
 * with score 1; a static mode when no agent lies within `gate`.
 */
class OracleForecaster final : public Forecaster {
 public:
  OracleForecaster(std::span<const GtAgent> gts, int horizon_steps, double gate = 2.0);
  ForecastSet forecast(const PastTrajectory& past) const override;

 private:
  std::vector<GtAgent> gts_;
  int horizon_steps_;
  double gate_;
};

/**
 * Static-motion post-processing. Always-static classes collapse to a single
 * static mode with score 1. Otherwise the least probable mode (ties: highest
 * index) becomes a static future with score 1 and every other mode is kept.
 * A set that already holds a static mode with score 1 is returned unchanged.
 */
ForecastSet post_process(const ForecastSet& forecasts, const PastTrajectory& past,
                         AgentClass agent_class);

}  // namespace modcast
