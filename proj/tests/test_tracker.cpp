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
#include <set>

#include "modcast/geometry.hpp"
#include "modcast/sim.hpp"
#include "modcast/tracker.hpp"
#include "test_util.hpp"

using namespace modcast;
using modcast::testing::det_at;

namespace {

Detection cube(double x, double y, int frame, double score = 0.9) {
  Detection d;
  d.box = make_box(x, y, 0, 1, 1, 1, 0);
  d.agent_class = AgentClass::kPedestrian;
  d.score = score;
  d.frame = frame;
  return d;
}

}  // namespace

TEST_CASE("cold start creates one track per detection") {
  Tracker t;
  std::vector<Detection> f0{cube(0, 0, 0), cube(10, 0, 0)};
  t.step(0, f0);
  REQUIRE(t.live_tracks().size() == 2);
  CHECK(t.live_tracks()[0].id != t.live_tracks()[1].id);
}

TEST_CASE("detection below the IoU gate does not associate") {
  Tracker t;
  std::vector<Detection> f0{cube(0, 0, 0)};
  t.step(0, f0);
  // unit cubes offset by 0.9 m: IoU = 0.1 / 1.9 < 0.1
  const double off = 0.9;
  CHECK(iou3d(cube(0, 0, 0).box, cube(off, 0, 1).box) < 0.1);
  std::vector<Detection> f1{cube(off, 0, 1)};
  t.step(1, f1);
  REQUIRE(t.live_tracks().size() == 2);
  const Track& old = t.live_tracks()[0];
  CHECK(old.state == TrackState::kInactive);
  CHECK(old.misses == 1);
  CHECK(old.points.back().kind == PointKind::kPropagated);
}

TEST_CASE("frame discontinuity and mismatched frames are rejected") {
  Tracker t;
  t.step(0, std::vector<Detection>{cube(0, 0, 0)});
  CHECK_THROWS_AS(t.step(2, std::vector<Detection>{}), std::invalid_argument);
  CHECK_THROWS_AS(t.step(1, std::vector<Detection>{cube(0, 0, 5)}), std::invalid_argument);
}

TEST_CASE("inactive lifecycle terminates after max_inactive_frames") {
  Tracker t;
  t.step(0, std::vector<Detection>{cube(0, 0, 0)});
  for (int f = 1; f <= 3; ++f) {
    t.step(f, std::vector<Detection>{});
    REQUIRE(t.live_tracks().size() == 1);
    CHECK(t.live_tracks()[0].misses == f);
  }
  t.step(4, std::vector<Detection>{});
  CHECK(t.live_tracks().empty());
  REQUIRE(t.terminated_tracks().size() == 1);
  const Track& dead = t.terminated_tracks()[0];
  CHECK(dead.state == TrackState::kTerminated);
  CHECK(dead.points.size() == 4);
  CHECK(dead.points.back().frame == 3);
  // a later detection at the same place starts a new id
  t.step(5, std::vector<Detection>{cube(0, 0, 5)});
  REQUIRE(t.live_tracks().size() == 1);
  CHECK(t.live_tracks()[0].id > dead.id);
}

TEST_CASE("inactive track re-associates within the window") {
  Tracker t;
  t.step(0, std::vector<Detection>{cube(0, 0, 0)});
  t.step(1, std::vector<Detection>{});
  t.step(2, std::vector<Detection>{cube(0, 0, 2)});
  REQUIRE(t.live_tracks().size() == 1);
  const Track& tr = t.live_tracks()[0];
  CHECK(tr.state == TrackState::kActive);
  CHECK(tr.misses == 0);
  CHECK(tr.points.size() == 3);
  CHECK(tr.points[1].kind == PointKind::kPropagated);
}

TEST_CASE("classes are tracked independently") {
  Tracker t;
  Detection a = cube(0, 0, 0);
  Detection b = cube(0, 0, 1);
  b.agent_class = AgentClass::kBicyclist;
  t.step(0, std::vector<Detection>{a});
  t.step(1, std::vector<Detection>{b});
  CHECK(t.live_tracks().size() == 2);
}

TEST_CASE("noiseless constant-velocity agent keeps one id") {
  std::vector<std::vector<Detection>> frames;
  for (int f = 0; f < 20; ++f) frames.push_back({det_at(0.8 * f, 0.3 * f, AgentClass::kRegularVehicle, 1.0, f)});
  const auto tracks = track_sequence(frames, 0, {});
  REQUIRE(tracks.size() == 1);
  CHECK(tracks[0].points.size() == 20);
  for (const auto& p : tracks[0].points) CHECK(p.observed());
}

TEST_CASE("association agrees with brute force") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0, 3), yaw(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Box3D> p, d;
    for (int i = 0; i < 5; ++i) p.push_back(make_box(pos(rng), pos(rng), 0, 2, 1, 1, yaw(rng)));
    for (int i = 0; i < 6; ++i) d.push_back(make_box(pos(rng), pos(rng), 0, 2, 1, 1, yaw(rng)));
    const CostMatrix m = association_costs(p, d, 0.1);
    const auto got = solve_assignment(m);
    const auto want = modcast::testing::brute_force_assignment(m);
    CHECK(got.pairs.size() == want.pairs);
    CHECK(got.total_cost == doctest::Approx(want.cost).epsilon(1e-12));
  }
}

TEST_CASE("interpolate_gaps examples") {
  Track tr;
  tr.points.push_back({0, make_box(0, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 1.0});
  for (int f = 1; f <= 3; ++f) tr.points.push_back({f, make_box(9, 9, 0, 1, 1, 1, 0), PointKind::kPropagated, 1.0});
  tr.points.push_back({4, make_box(4, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 1.0});
  tr.points.push_back({5, make_box(5, 0, 0, 1, 1, 1, 0), PointKind::kPropagated, 1.0});
  const Track out = interpolate_gaps(tr);
  REQUIRE(out.points.size() == 5);
  for (int f = 1; f <= 3; ++f) {
    CHECK(out.points[f].box.cx == doctest::Approx(f));
    CHECK(out.points[f].box.cy == doctest::Approx(0.0));
    CHECK(out.points[f].kind == PointKind::kInterpolated);
  }
  CHECK(fill_interior_gaps(tr).points.size() == 6);

  Track clean;
  for (int f = 0; f < 4; ++f) clean.points.push_back({f, make_box(f, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 1.0});
  const Track same = interpolate_gaps(clean);
  REQUIRE(same.points.size() == clean.points.size());
  for (std::size_t i = 0; i < same.points.size(); ++i) CHECK(same.points[i].box == clean.points[i].box);
}

TEST_CASE("interpolated yaw follows the shorter arc") {
  Track tr;
  tr.points.push_back({0, make_box(0, 0, 0, 1, 1, 1, 3.0), PointKind::kObserved, 1.0});
  tr.points.push_back({1, make_box(0, 0, 0, 1, 1, 1, 0.0), PointKind::kPropagated, 1.0});
  tr.points.push_back({2, make_box(0, 0, 0, 1, 1, 1, -3.0), PointKind::kObserved, 1.0});
  const Track out = interpolate_gaps(tr);
  CHECK(std::abs(out.points[1].box.yaw) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("tracker gaps from dropped frames interpolate back to ground truth") {
  const GtAgent g = modcast::testing::linear_gt(0, AgentClass::kRegularVehicle, {0, 0}, {0.7, 0.2}, 0, 14);
  std::vector<std::vector<Detection>> frames(15);
  for (const auto& s : g.samples) {
    if (s.frame >= 5 && s.frame <= 7) continue;
    Detection d;
    d.box = s.box;
    d.agent_class = g.agent_class;
    d.score = 1.0;
    d.frame = s.frame;
    frames[s.frame].push_back(d);
  }
  const auto tracks = track_sequence(frames, 0, {});
  REQUIRE(tracks.size() == 1);
  const Track full = interpolate_gaps(tracks[0]);
  REQUIRE(full.points.size() == 15);
  for (const auto& p : full.points) {
    CHECK(center_distance_2d(p.box, g.at(p.frame)->box) < 1e-6);
  }
}

TEST_CASE("extract_past never looks past the current frame") {
  Track tr;
  tr.id = 4;
  tr.points.push_back({0, make_box(0, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 0.5});
  tr.points.push_back({1, make_box(7, 7, 0, 1, 1, 1, 0), PointKind::kPropagated, 0.5});
  tr.points.push_back({2, make_box(2, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 0.7});
  tr.points.push_back({3, make_box(9, 9, 0, 1, 1, 1, 0), PointKind::kPropagated, 0.7});
  tr.points.push_back({4, make_box(4, 0, 0, 1, 1, 1, 0), PointKind::kObserved, 0.9});
  TimeBase tb;
  const auto raw = extract_past(tr, 3, tb, false);
  REQUIRE(raw);
  CHECK(raw->samples.size() == 4);
  CHECK(raw->samples.back().frame == 0);
  CHECK(raw->samples.back().x == 9.0);
  const auto filled = extract_past(tr, 3, tb, true);
  REQUIRE(filled);
  CHECK(filled->samples[1].x == doctest::Approx(1.0));
  CHECK(filled->samples.back().x == 9.0);
  CHECK(!extract_past(tr, 6, tb).has_value());

  tb.past_window_s = 0.2;
  CHECK(extract_past(tr, 4, tb)->samples.size() == 3);
}

TEST_CASE("track ids are unique on a simulated scene") {
  SimConfig sc;
  const Scene scene = gen_scene(sc, 5);
  const auto frames = corrupt(scene, NoiseConfig{}, 5);
  const auto tracks = track_sequence(frames, 0, {});
  std::set<std::int64_t> ids;
  for (const auto& t : tracks) {
    CHECK(ids.insert(t.id).second);
    REQUIRE(!t.points.empty());
    CHECK(t.points.front().observed());
    for (std::size_t i = 1; i < t.points.size(); ++i) CHECK(t.points[i].frame == t.points[i - 1].frame + 1);
  }
}
