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

#include "modcast/kalman.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace modcast {

namespace {

constexpr double kMinDimension = 1e-3;

using ObsMatrix = Eigen::Matrix<double, KalmanState::kObserved, 10>;
using ObsVector = Eigen::Matrix<double, KalmanState::kObserved, 1>;
using ObsCov = Eigen::Matrix<double, KalmanState::kObserved, KalmanState::kObserved>;

ObsMatrix observation_matrix() {
  ObsMatrix h = ObsMatrix::Zero();
  h.leftCols<KalmanState::kObserved>().setIdentity();
  return h;
}

KalmanState::Matrix transition_matrix() {
  KalmanState::Matrix f = KalmanState::Matrix::Identity();
  f(0, 7) = 1.0;
  f(1, 8) = 1.0;
  f(2, 9) = 1.0;
  return f;
}

}  // namespace

void validate_kalman_config(const KalmanConfig& cfg) {
  if (!(cfg.measurement_var > 0.0) || !(cfg.process_var >= 0.0) ||
      !(cfg.initial_velocity_var > 0.0)) {
    throw std::invalid_argument("kalman variances must be positive");
  }
}

Box3D KalmanState::box() const {
  Box3D b;
  b.cx = mean(0);
  b.cy = mean(1);
  b.cz = mean(2);
  b.yaw = yaw_normalize(mean(3));
  b.length = std::max(mean(4), kMinDimension);
  b.width = std::max(mean(5), kMinDimension);
  b.height = std::max(mean(6), kMinDimension);
  return b;
}

KalmanState kf_init(const Box3D& box, const KalmanConfig& cfg) {
  KalmanState s;
  s.mean << box.cx, box.cy, box.cz, box.yaw, box.length, box.width, box.height, 0.0, 0.0, 0.0;
  s.covariance.setZero();
  for (int i = 0; i < KalmanState::kObserved; ++i) s.covariance(i, i) = cfg.measurement_var;
  for (int i = KalmanState::kObserved; i < 10; ++i) s.covariance(i, i) = cfg.initial_velocity_var;
  return s;
}

KalmanState kf_predict(const KalmanState& state, const KalmanConfig& cfg) {
  static const KalmanState::Matrix f = transition_matrix();
  KalmanState out;
  out.mean = f * state.mean;
  out.mean(3) = yaw_normalize(out.mean(3));
  out.covariance = f * state.covariance * f.transpose();
  out.covariance.diagonal().array() += cfg.process_var;
  return out;
}

KalmanState kf_update(const KalmanState& state, const Box3D& z, const KalmanConfig& cfg) {
  static const ObsMatrix h = observation_matrix();
  ObsVector meas;
  meas << z.cx, z.cy, z.cz, z.yaw, z.length, z.width, z.height;

  ObsVector innovation = meas - h * state.mean;
  innovation(3) = yaw_normalize(innovation(3));

  const ObsCov r = ObsCov::Identity() * cfg.measurement_var;
  const ObsCov s = h * state.covariance * h.transpose() + r;
  const Eigen::Matrix<double, 10, KalmanState::kObserved> gain =
      state.covariance * h.transpose() * s.inverse();

  KalmanState out;
  out.mean = state.mean + gain * innovation;
  out.mean(3) = yaw_normalize(out.mean(3));
  // Joseph form keeps the covariance symmetric PSD.
  const KalmanState::Matrix i_kh = KalmanState::Matrix::Identity() - gain * h;
  out.covariance = i_kh * state.covariance * i_kh.transpose() + gain * r * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

}  // namespace modcast
