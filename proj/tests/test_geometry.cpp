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
#include <random>

#include "modcast/geometry.hpp"
#include "test_util.hpp"

using namespace modcast;

TEST_CASE("iou3d examples") {
  const Box3D a = make_box(0, 0, 0, 1, 1, 1, 0);
  CHECK(iou3d(a, a) == 1.0);
  CHECK(iou3d(a, make_box(100, 0, 0, 1, 1, 1, 0)) == 0.0);
  CHECK(iou3d(a, make_box(0.5, 0, 0, 1, 1, 1, 0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou3d handles rotation and vertical offset") {
  const Box3D a = make_box(0, 0, 0, 2, 2, 2, 0);
  // square rotated by 90 degrees is the same footprint
  CHECK(iou3d(a, make_box(0, 0, 0, 2, 2, 2, std::numbers::pi / 2)) == doctest::Approx(1.0));
  // half vertical overlap: inter 4, union 12
  CHECK(iou3d(a, make_box(0, 0, 1, 2, 2, 2, 0)) == doctest::Approx(1.0 / 3.0));
  // 45 degrees: octagon of area 8(sqrt2-1) for unit half-width squares scaled by 4
  const double oct = 8.0 * (std::numbers::sqrt2 - 1.0);
  const double inter = oct * 2.0;
  CHECK(iou3d(a, make_box(0, 0, 0, 2, 2, 2, std::numbers::pi / 4)) ==
        doctest::Approx(inter / (16.0 - inter)));
}

TEST_CASE("iou3d rejects degenerate boxes") {
  Box3D z{0, 0, 0, 1, 1, 0, 0};
  CHECK_THROWS_AS(iou3d(z, make_box(0, 0, 0, 1, 1, 1, 0)), std::invalid_argument);
}

TEST_CASE("polygon helpers") {
  const auto c = bev_corners(make_box(0, 0, 0, 4, 2, 1, 0));
  const std::vector<Vec2> poly(c.begin(), c.end());
  CHECK(polygon_area(poly) == doctest::Approx(8.0));
  CHECK(convex_intersection_area(poly, poly) == doctest::Approx(8.0));
}

TEST_CASE("iou3d symmetric and bounded on random pairs") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(-3, 3), dim(0.2, 5), yaw(-4, 4);
  for (int i = 0; i < 2000; ++i) {
    const Box3D a = make_box(pos(rng), pos(rng), pos(rng) * 0.2, dim(rng), dim(rng), dim(rng), yaw(rng));
    const Box3D b = make_box(pos(rng), pos(rng), pos(rng) * 0.2, dim(rng), dim(rng), dim(rng), yaw(rng));
    const double ab = iou3d(a, b);
    CHECK(ab == iou3d(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    if (!(a == b)) CHECK(ab < 1.0);
  }
}
