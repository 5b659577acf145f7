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

#include <Eigen/Core>

#include "modcast/core.hpp"

namespace modcast {

/// Noise model for the constant-velocity box filter. All variances are per step.
struct KalmanConfig {
  double measurement_var = 0.01;
  double process_var = 0.01;
  double initial_velocity_var = 10.0;
};

void validate_kalman_config(const KalmanConfig& cfg);

/**
 * State layout: (cx, cy, cz, yaw, length, width, height, vx, vy, vz).
 * Velocities are meters per frame. The first seven components are observed.
 */
struct KalmanState {
  using Vector = Eigen::Matrix<double, 10, 1>;
  using Matrix = Eigen::Matrix<double, 10, 10>;
  static constexpr int kObserved = 7;

  Vector mean = Vector::Zero();
  Matrix covariance = Matrix::Identity();

  Box3D box() const;
};

KalmanState kf_init(const Box3D& box, const KalmanConfig& cfg);

/// Constant-velocity transition with additive process noise.
KalmanState kf_predict(const KalmanState& state, const KalmanConfig& cfg);

/// Linear measurement update on the observed block. The yaw innovation is wrapped.
KalmanState kf_update(const KalmanState& state, const Box3D& measurement,
                      const KalmanConfig& cfg);

}  // namespace modcast
