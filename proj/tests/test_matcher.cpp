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

#include <random>

#include "modcast/matcher.hpp"
#include "test_util.hpp"

using namespace modcast;
using modcast::testing::linear_gt;

namespace {

/// Past ending at absolute frame `t0` with samples at frames t0-n..t0.
PastTrajectory past_of(std::int64_t id, AgentClass c, int t0, std::vector<Vec2> xy) {
  PastTrajectory p;
  p.agent_id = id;
  p.agent_class = c;
  p.current_frame = t0;
  p.score = 0.9;
  const int n = static_cast<int>(xy.size());
  for (int i = 0; i < n; ++i) p.samples.push_back({i - (n - 1), xy[i].x, xy[i].y, 0.0, true});
  return p;
}

PastTrajectory point_past(std::int64_t id, AgentClass c, int t0, Vec2 xy) {
  return past_of(id, c, t0, {xy});
}

constexpr AgentClass kCar = AgentClass::kRegularVehicle;

}  // namespace

TEST_CASE("past_distance examples") {
  const GtAgent g = linear_gt(0, kCar, {0, 0}, {1, 0}, 0, 20);
  std::vector<Vec2> same, shifted, late;
  for (int f = 4; f <= 10; ++f) {
    same.push_back({1.0 * f, 0});
    shifted.push_back({1.0 * f + 3, 4});
  }
  for (int f = 5; f <= 10; ++f) late.push_back({1.0 * f, f == 10 ? 6.0 : 0.0});
  for (DistanceMode m : {DistanceMode::kAtT0, DistanceMode::kAllPast}) {
    CHECK(*past_distance(past_of(1, kCar, 10, same), g, m) == 0.0);
    CHECK(*past_distance(past_of(1, kCar, 10, shifted), g, m) == doctest::Approx(5.0));
  }
  CHECK(*past_distance(past_of(1, kCar, 10, late), g, DistanceMode::kAtT0) == doctest::Approx(6.0));
  CHECK(*past_distance(past_of(1, kCar, 10, late), g, DistanceMode::kAllPast) == doctest::Approx(1.0));
  CHECK(!past_distance(point_past(1, kCar, 30, {0, 0}), g, DistanceMode::kAllPast).has_value());
}

TEST_CASE("match_one_to_one examples") {
  MatchConfig cfg;
  cfg.assignment = AssignmentMode::kOneToOne;
  cfg.distance = DistanceMode::kAtT0;
  const std::vector<GtAgent> gts{linear_gt(0, kCar, {0, 0}, {0, 0}, 0, 5)};
  std::vector<PastTrajectory> preds{point_past(1, kCar, 3, {0, 0})};
  CHECK(match_one_to_one(preds, gts, cfg).size() == 1);
  preds = {point_past(1, kCar, 3, {2.5, 0})};
  CHECK(match_one_to_one(preds, gts, cfg).empty());
  preds = {point_past(1, kCar, 3, {0.6, 0}), point_past(2, kCar, 3, {0.5, 0})};
  const auto m = match_one_to_one(preds, gts, cfg);
  REQUIRE(m.size() == 1);
  CHECK(m[0].pred == 1);
  CHECK(m[0].distance == doctest::Approx(0.5));
}

TEST_CASE("match_many_to_one examples") {
  MatchConfig cfg;
  cfg.distance = DistanceMode::kAtT0;
  const std::vector<GtAgent> gts{linear_gt(0, kCar, {0, 0}, {0, 0}, 0, 5)};
  std::vector<PastTrajectory> preds{point_past(1, kCar, 3, {0.4, 0}), point_past(2, kCar, 3, {0, 0.3})};
  CHECK(match_many_to_one(preds, gts, cfg).size() == 2);
  preds = {point_past(1, kCar, 3, {5, 0})};
  CHECK(match_many_to_one(preds, gts, cfg).empty());
}

TEST_CASE("class isolation and gt tie-breaking") {
  MatchConfig cfg;
  cfg.distance = DistanceMode::kAtT0;
  const std::vector<GtAgent> gts{linear_gt(7, kCar, {1, 0}, {0, 0}, 0, 5),
                                 linear_gt(3, kCar, {-1, 0}, {0, 0}, 0, 5),
                                 linear_gt(1, AgentClass::kBus, {0, 0}, {0, 0}, 0, 5)};
  std::vector<PastTrajectory> preds{point_past(1, kCar, 3, {0, 0})};
  const auto m = match_many_to_one(preds, gts, cfg);
  REQUIRE(m.size() == 1);
  CHECK(gts[m[0].gt].id == 3);
  cfg.assignment = AssignmentMode::kOneToOne;
  for (const auto& x : match_one_to_one(preds, gts, cfg)) CHECK(gts[x.gt].agent_class == kCar);
}

TEST_CASE("matchers agree with exhaustive oracles on random scenes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-3, 3);
  std::uniform_int_distribution<int> count(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GtAgent> gts;
    std::vector<PastTrajectory> preds;
    const int ng = count(rng), np = count(rng);
    for (int i = 0; i < ng; ++i) gts.push_back(linear_gt(i, kCar, {pos(rng), pos(rng)}, {0, 0}, 0, 5));
    for (int i = 0; i < np; ++i) preds.push_back(point_past(i, kCar, 3, {pos(rng), pos(rng)}));
    MatchConfig cfg;
    cfg.distance = DistanceMode::kAtT0;

    CostMatrix cost(preds.size(), gts.size());
    for (std::size_t i = 0; i < preds.size(); ++i)
      for (std::size_t j = 0; j < gts.size(); ++j) {
        const double d = *past_distance(preds[i], gts[j], cfg.distance);
        if (d <= cfg.gate) cost(i, j) = d;
      }
    const auto want = modcast::testing::brute_force_assignment(cost);
    cfg.assignment = AssignmentMode::kOneToOne;
    const auto one = match_one_to_one(preds, gts, cfg);
    double total = 0.0;
    for (const auto& m : one) total += m.distance;
    CHECK(one.size() == want.pairs);
    CHECK(total == doctest::Approx(want.cost).epsilon(1e-12));

    const auto many = match_many_to_one(preds, gts, cfg);
    std::size_t expected_many = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      std::optional<std::size_t> best;
      for (std::size_t j = 0; j < gts.size(); ++j) {
        if (!cost.allowed(i, j)) continue;
        if (!best || cost(i, j) < cost(i, *best)) best = j;
      }
      if (!best) continue;
      ++expected_many;
      bool found = false;
      for (const auto& m : many)
        if (m.pred == i) found = m.gt == *best;
      CHECK(found);
    }
    CHECK(many.size() == expected_many);
    CHECK(many.size() >= one.size());
  }
}

TEST_CASE("build_training_pairs") {
  TimeBase tb;
  tb.horizon_steps = 30;
  std::vector<GtAgent> gts{linear_gt(0, kCar, {0, 0}, {1, 0}, 0, 60),
                           linear_gt(1, kCar, {0, 10}, {0, 0}, 0, 25)};
  // perfect tracks mirroring the gts
  std::vector<Track> tracks;
  for (const auto& g : gts) {
    Track t;
    t.id = g.id + 100;
    t.agent_class = g.agent_class;
    for (const auto& s : g.samples) t.points.push_back({s.frame, s.box, PointKind::kObserved, 1.0});
    tracks.push_back(t);
  }
  for (auto a : {AssignmentMode::kOneToOne, AssignmentMode::kManyToOne}) {
    for (auto d : {DistanceMode::kAtT0, DistanceMode::kAllPast}) {
      MatchConfig cfg{a, d, 2.0};
      const auto pairs = build_training_pairs(tracks, gts, cfg, tb, 20);
      // gt 1 ends 5 frames after t0: no pair
      REQUIRE(pairs.size() == 1);
      CHECK(pairs[0].gt_agent_id == 0);
      CHECK(pairs[0].match_distance == 0.0);
      REQUIRE(pairs[0].gt_future.waypoints.size() == 30);
      CHECK(pairs[0].gt_future.waypoints.back().x == doctest::Approx(50.0));
      CHECK(pairs[0].predicted_past.samples.size() == 21);
    }
  }
}
