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

#include <doctest.h>

#include <stdexcept>

#include <numbers>

#include "modcast/kalman.hpp"

using namespace modcast;

TEST_CASE("predict moves by velocity only") {
  KalmanConfig cfg;
  KalmanState s = kf_init(make_box(1, 2, 0.5, 4, 2, 1.5, 0.3), cfg);
  KalmanState p = kf_predict(s, cfg);
  CHECK(p.mean.head<7>().isApprox(s.mean.head<7>()));
  s.mean(7) = 1.0;
  p = kf_predict(s, cfg);
  CHECK(p.mean(0) == doctest::Approx(2.0));
  CHECK(p.mean(1) == doctest::Approx(2.0));
  CHECK(p.mean(3) == doctest::Approx(0.3));
  CHECK(p.mean(4) == doctest::Approx(4.0));
  CHECK(p.covariance.trace() > s.covariance.trace());
}

TEST_CASE("zero innovation leaves the mean unchanged") {
  KalmanConfig cfg;
  const KalmanState s = kf_predict(kf_init(make_box(1, 2, 0, 4, 2, 1.5, 0.3), cfg), cfg);
  const KalmanState u = kf_update(s, s.box(), cfg);
  CHECK((u.mean - s.mean).norm() < 1e-12);
  CHECK(u.covariance.topLeftCorner<7, 7>().trace() <= s.covariance.topLeftCorner<7, 7>().trace());
  CHECK((u.covariance - u.covariance.transpose()).norm() < 1e-12);
}

TEST_CASE("yaw innovation is wrapped") {
  KalmanConfig cfg;
  cfg.measurement_var = 1.0;
  KalmanState s = kf_init(make_box(0, 0, 0, 4, 2, 1.5, std::numbers::pi - 0.05), cfg);
  s.covariance = KalmanState::Matrix::Identity();
  const KalmanState u = kf_update(s, make_box(0, 0, 0, 4, 2, 1.5, -std::numbers::pi + 0.05), cfg);
  // equal prior and measurement variance: half of the wrapped 0.1 innovation
  CHECK(yaw_normalize(u.mean(3) - (std::numbers::pi - 0.05)) == doctest::Approx(0.05));
}

TEST_CASE("small measurement noise pulls to the measurement") {
  KalmanConfig cfg;
  cfg.measurement_var = 1e-12;
  const KalmanState s = kf_init(make_box(0, 0, 0, 4, 2, 1.5, 0), cfg);
  const Box3D m = make_box(0.7, -0.3, 0.1, 4.2, 2.1, 1.4, 0.2);
  const KalmanState u = kf_update(kf_predict(s, cfg), m, cfg);
  CHECK(std::abs(u.mean(0) - m.cx) < 1e-6);
  CHECK(std::abs(u.mean(1) - m.cy) < 1e-6);
  CHECK(std::abs(u.mean(3) - m.yaw) < 1e-6);
  CHECK(std::abs(u.mean(4) - m.length) < 1e-6);
}

TEST_CASE("converges on constant-velocity measurements") {
  KalmanConfig cfg;
  KalmanState s = kf_init(make_box(0, 0, 0, 4, 2, 1.5, 0), cfg);
  for (int k = 1; k <= 10; ++k) {
    s = kf_predict(s, cfg);
    s = kf_update(s, make_box(1.5 * k, -0.5 * k, 0, 4, 2, 1.5, 0), cfg);
  }
  CHECK(std::abs(s.mean(0) - 15.0) < 1e-3);
  CHECK(std::abs(s.mean(1) + 5.0) < 1e-3);
}
