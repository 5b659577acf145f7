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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "modcast/metrics.hpp"
#include "ap_oracle.hpp"

using namespace modcast;

namespace {

constexpr AgentClass kCar = AgentClass::kRegularVehicle;

FutureTrajectory line(Vec2 from, Vec2 step, int horizon = 30) {
  FutureTrajectory t;
  for (int k = 1; k <= horizon; ++k) t.waypoints.push_back({from.x + step.x * k, from.y + step.y * k});
  return t;
}

ForecastSet single(const FutureTrajectory& t) {
  ForecastSet fs;
  fs.modes.push_back({t, 1.0});
  return fs;
}

ForecastSet shifted(const FutureTrajectory& t, Vec2 off) {
  FutureTrajectory s = t;
  for (auto& w : s.waypoints) w = w + off;
  return single(s);
}

EvalBox box(int frame, std::int64_t id, double x, double y = 0.0, double score = 1.0,
            AgentClass c = kCar) {
  return {frame, id, c, {x, y}, score};
}

}  // namespace

TEST_CASE("classify_trajectory examples") {
  MetricConfig cfg;
  CHECK(classify_trajectory({1, 1}, line({1, 1}, {0, 0}), {0, 0}, cfg) == TrajectoryType::kStatic);
  CHECK(classify_trajectory({0, 0}, line({0, 0}, {0.2, 0}), {0.2, 0}, cfg) == TrajectoryType::kLinear);
  // quarter turn of radius 10 over the horizon
  FutureTrajectory arc;
  const double w = (std::numbers::pi / 2) / 30.0;
  for (int k = 1; k <= 30; ++k) arc.waypoints.push_back({10 * std::sin(w * k), 10 - 10 * std::cos(w * k)});
  CHECK(classify_trajectory({0, 0}, arc, {10 * w, 0}, cfg) == TrajectoryType::kNonLinear);
}

TEST_CASE("ade and fde examples") {
  const FutureTrajectory gt = line({0, 0}, {1, 0});
  CHECK(ade(single(gt), gt) == 0.0);
  CHECK(fde(single(gt), gt) == 0.0);
  CHECK(ade(shifted(gt, {0, 1}), gt) == doctest::Approx(1.0));
  CHECK(fde(shifted(gt, {0, 1}), gt) == doctest::Approx(1.0));
  ForecastSet two = shifted(gt, {0, 2});
  two.modes.push_back(shifted(gt, {0.5, 0}).modes[0]);
  const auto e = displacement_error(two, gt);
  CHECK(e.ade == doctest::Approx(0.5));
  CHECK(e.mode == 1);
  CHECK(e.fde == doctest::Approx(0.5));
  CHECK_THROWS_AS(ade(single(line({0, 0}, {1, 0}, 10)), gt), std::invalid_argument);
}

TEST_CASE("forecast_ap examples") {
  MetricConfig cfg;
  const FutureTrajectory f = line({0, 0}, {1, 0});
  std::vector<ForecastGt> gts{{0, 1, kCar, {0, 0}, f, TrajectoryType::kLinear},
                              {0, 2, kCar, {10, 0}, line({10, 0}, {1, 0}), TrajectoryType::kLinear}};
  std::vector<ForecastPrediction> none;
  CHECK(*forecast_ap(none, gts, kCar, TrajectoryType::kLinear, 2.0, cfg) == 0.0);
  CHECK(!forecast_ap(none, gts, kCar, TrajectoryType::kStatic, 2.0, cfg).has_value());

  std::vector<ForecastPrediction> perfect{{0, kCar, 0.9, {0, 0}, single(f)},
                                          {0, kCar, 0.8, {10, 0}, single(gts[1].future)}};
  CHECK(*forecast_ap(perfect, gts, kCar, TrajectoryType::kLinear, 0.5, cfg) == doctest::Approx(1.0));

  // second prediction detects its gt but misses the endpoint: 51 of 101 samples at precision 1
  std::vector<ForecastPrediction> half{{0, kCar, 0.9, {0, 0}, single(f)},
                                       {0, kCar, 0.8, {10, 0}, shifted(gts[1].future, {0, 5})}};
  CHECK(*forecast_ap(half, gts, kCar, TrajectoryType::kLinear, 2.0, cfg) == doctest::Approx(51.0 / 101.0));
  half[1].score = 0.95;
  CHECK(*forecast_ap(half, gts, kCar, TrajectoryType::kLinear, 2.0, cfg) == doctest::Approx(25.5 / 101.0));
}

TEST_CASE("forecast_ap matches brute force on random instances") {
  MetricConfig cfg;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pos(-3, 3), u(0, 1), jit(-1.5, 1.5);
  std::uniform_int_distribution<int> n_pred(0, 6), n_gt(0, 5), type_d(0, 2), sample_d(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ForecastGt> gts;
    const int ng = n_gt(rng);
    for (int j = 0; j < ng; ++j) {
      const Vec2 c{pos(rng), pos(rng)};
      gts.push_back({sample_d(rng), j, u(rng) < 0.8 ? kCar : AgentClass::kBus, c,
                     line(c, {jit(rng) * 0.1, jit(rng) * 0.1}, 5), static_cast<TrajectoryType>(type_d(rng))});
    }
    std::vector<ForecastPrediction> preds;
    const int np = n_pred(rng);
    for (int i = 0; i < np; ++i) {
      ForecastPrediction p;
      p.sample = sample_d(rng);
      p.agent_class = u(rng) < 0.8 ? kCar : AgentClass::kBus;
      p.score = u(rng);
      if (!gts.empty() && u(rng) < 0.7) {
        const auto& g = gts[static_cast<std::size_t>(u(rng) * gts.size())];
        p.current = g.current + Vec2{jit(rng), jit(rng)};
        p.forecast = shifted(g.future, {jit(rng), jit(rng)});
        p.forecast.modes.push_back(shifted(g.future, {3 * jit(rng), 3 * jit(rng)}).modes[0]);
      } else {
        p.current = {pos(rng), pos(rng)};
        p.forecast = single(line(p.current, {0, 0}, 5));
      }
      preds.push_back(p);
    }
    for (TrajectoryType t : kAllTrajectoryTypes) {
      for (double thr : cfg.forecast_thresholds) {
        std::size_t npos = 0;
        for (const auto& g : gts) npos += (g.agent_class == kCar && g.type == t);
        std::vector<ForecastPrediction> cars;
        for (const auto& p : preds)
          if (p.agent_class == kCar) cars.push_back(p);
        const double want = modcast::testing::brute_ap(modcast::testing::brute_labels(cars, gts, t, thr), npos, cfg.ap_recall_samples);
        const auto got = forecast_ap(preds, gts, kCar, t, thr, cfg);
        if (npos == 0) {
          CHECK(!got.has_value());
        } else {
          REQUIRE(got.has_value());
          CHECK(std::abs(*got - want) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("forecast_ap monotone degradation") {
  MetricConfig cfg;
  const FutureTrajectory f = line({0, 0}, {1, 0});
  std::vector<ForecastGt> gts{{0, 1, kCar, {0, 0}, f, TrajectoryType::kLinear},
                              {0, 2, kCar, {10, 0}, line({10, 0}, {1, 0}), TrajectoryType::kLinear}};
  std::vector<ForecastPrediction> preds{{0, kCar, 0.9, {0, 0}, single(f)},
                                        {0, kCar, 0.8, {10, 0}, single(gts[1].future)}};
  const double base = *forecast_ap(preds, gts, kCar, TrajectoryType::kLinear, 1.0, cfg);
  auto fewer = preds;
  fewer.pop_back();
  CHECK(*forecast_ap(fewer, gts, kCar, TrajectoryType::kLinear, 1.0, cfg) <= base);
  auto more = preds;
  more.push_back({0, kCar, 0.01, {30, 30}, single(line({30, 30}, {0, 0}))});
  CHECK(*forecast_ap(more, gts, kCar, TrajectoryType::kLinear, 1.0, cfg) <= base);
}

TEST_CASE("mapf excludes undefined cells and reports per type") {
  MetricConfig cfg;
  const FutureTrajectory still = line({0, 0}, {0, 0});
  std::vector<ForecastGt> gts{{0, 1, kCar, {0, 0}, still, TrajectoryType::kStatic}};
  std::vector<ForecastPrediction> preds{{0, kCar, 0.9, {0, 0}, single(still)}};
  const auto r = mapf(preds, gts, cfg);
  CHECK(r.cells == 4);
  CHECK(*r.overall == 1.0);
  CHECK(*r.per_type.at(TrajectoryType::kStatic) == 1.0);
  CHECK(!r.per_type.at(TrajectoryType::kNonLinear).has_value());
  CHECK(!mapf(preds, std::vector<ForecastGt>{}, cfg).overall.has_value());

  // static forecasts on non-linear movers score zero
  FutureTrajectory arc;
  for (int k = 1; k <= 30; ++k) arc.waypoints.push_back({10 * std::sin(0.05 * k), 10 - 10 * std::cos(0.05 * k)});
  std::vector<ForecastGt> movers{{0, 1, kCar, {0, 0}, arc, TrajectoryType::kNonLinear}};
  CHECK(*mapf(preds, movers, cfg).per_type.at(TrajectoryType::kNonLinear) == 0.0);
}

TEST_CASE("hota perfect and empty") {
  MetricConfig cfg;
  std::vector<EvalBox> gts, trk;
  for (int f = 0; f < 10; ++f) {
    gts.push_back(box(f, 1, 0));
    gts.push_back(box(f, 2, 10));
    trk.push_back(box(f, 7, 0));
    trk.push_back(box(f, 9, 10));
  }
  const auto p = hota(trk, gts, cfg);
  CHECK(p->hota == doctest::Approx(1.0));
  CHECK(p->deta == doctest::Approx(1.0));
  CHECK(p->assa == doctest::Approx(1.0));
  CHECK(hota(std::vector<EvalBox>{}, gts, cfg)->hota == 0.0);
  CHECK(!hota(trk, std::vector<EvalBox>{}, cfg).has_value());
}

TEST_CASE("hota id swap hand count") {
  // Two agents, ten frames, track ids swap at frame 5. Every TP pair has
  // 5 co-occurrences out of 10 gt and 10 track detections: A = 5 / 15.
  MetricConfig cfg;
  std::vector<EvalBox> gts, trk;
  for (int f = 0; f < 10; ++f) {
    gts.push_back(box(f, 1, 0));
    gts.push_back(box(f, 2, 10));
    trk.push_back(box(f, f < 5 ? 7 : 9, 0));
    trk.push_back(box(f, f < 5 ? 9 : 7, 10));
  }
  const auto r = hota(trk, gts, cfg);
  CHECK(r->deta == 1.0);
  CHECK(r->assa == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r->hota == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));

  // relabeling track ids is irrelevant
  auto renamed = trk;
  for (auto& b : renamed) b.id = b.id == 7 ? 123 : 45;
  CHECK(hota(renamed, gts, cfg)->hota == r->hota);
}

TEST_CASE("hota with localization error depends on alpha") {
  MetricConfig cfg;
  std::vector<EvalBox> gts{box(0, 1, 0)}, trk{box(0, 5, 1.0)};
  // distance 1: TP iff 1 <= 2(1 - alpha) iff alpha <= 0.5 -> 10 of 19 levels
  CHECK(hota(trk, gts, cfg)->hota == doctest::Approx(10.0 / 19.0));
}

TEST_CASE("mota examples") {
  MetricConfig cfg;
  std::vector<EvalBox> gts, trk;
  for (int f = 0; f < 10; ++f) {
    for (int a = 0; a < 10; ++a) {
      gts.push_back(box(f, a, 5.0 * a));
      if (a != 0) trk.push_back(box(f, 100 + a, 5.0 * a));
    }
  }
  const auto m = mota(trk, gts, cfg);
  CHECK(m->mota == doctest::Approx(0.9));
  CHECK(m->counts.fn == 10);
  CHECK(m->counts.ids == 0);
  CHECK(m->counts.fp == 0);

  const auto dropped = mota(std::vector<EvalBox>{}, gts, cfg);
  CHECK(dropped->mota == 0.0);

  // lots of clutter: raw value negative, clamped to zero
  auto clutter = trk;
  for (int f = 0; f < 10; ++f)
    for (int k = 0; k < 30; ++k) clutter.push_back(box(f, 500 + k, 200.0 + 5 * k));
  const auto c = mota(clutter, gts, cfg);
  CHECK(c->mota_raw < 0.0);
  CHECK(c->mota == 0.0);
}

TEST_CASE("mota counts identity switches") {
  MetricConfig cfg;
  std::vector<EvalBox> gts, trk;
  for (int f = 0; f < 10; ++f) {
    gts.push_back(box(f, 1, 0));
    trk.push_back(box(f, f < 5 ? 7 : 8, 0));
  }
  const auto m = mota(trk, gts, cfg);
  CHECK(m->counts.ids == 1);
  CHECK(m->mota_raw == doctest::Approx(0.9));
}

TEST_CASE("amota perfect and partial") {
  MetricConfig cfg;
  std::vector<EvalBox> gts, trk;
  for (int f = 0; f < 10; ++f) {
    gts.push_back(box(f, 1, 0));
    gts.push_back(box(f, 2, 10));
    trk.push_back(box(f, 7, 0, 0.0, 0.9));
    trk.push_back(box(f, 9, 10, 0.0, 0.8));
  }
  CHECK(*amota(trk, gts, cfg) == doctest::Approx(1.0));
  CHECK(mota(trk, gts, cfg)->mota == doctest::Approx(1.0));
  // only half of the gt can ever be recalled: recalls above 0.5 contribute 0
  std::vector<EvalBox> half;
  for (const auto& b : trk)
    if (b.id == 7) half.push_back(b);
  CHECK(*amota(half, gts, cfg) == doctest::Approx(0.5));
}
