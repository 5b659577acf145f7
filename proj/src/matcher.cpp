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

#include "modcast/matcher.hpp"

#include <cmath>
#include <stdexcept>

#include "modcast/assignment.hpp"

namespace modcast {

void validate_match_config(const MatchConfig& cfg) {
  if (!(cfg.gate > 0.0)) throw std::invalid_argument("match gate must be > 0");
}

std::optional<double> past_distance(const PastTrajectory& pred, const GtAgent& gt,
                                    DistanceMode mode) {
  if (pred.samples.empty()) return std::nullopt;
  auto dist_at = [&](const PastSample& s) -> std::optional<double> {
    const GtSample* g = gt.at(pred.current_frame + s.frame);
    if (g == nullptr) return std::nullopt;
    return std::hypot(s.x - g->box.cx, s.y - g->box.cy);
  };

  if (mode == DistanceMode::kAtT0) {
    if (pred.samples.back().frame != 0) return std::nullopt;
    return dist_at(pred.samples.back());
  }
  double sum = 0.0;
  int n = 0;
  for (const auto& s : pred.samples) {
    if (s.frame > 0) continue;
    if (const auto d = dist_at(s)) {
      sum += *d;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

namespace {

void check_common_frame(std::span<const PastTrajectory> preds) {
  for (const auto& p : preds) {
    validate_past(p);
    if (p.current_frame != preds.front().current_frame) {
      throw std::invalid_argument("matcher: predictions must share the current frame");
    }
  }
}

std::optional<double> gated_distance(const PastTrajectory& p, const GtAgent& g,
                                     const MatchConfig& cfg) {
  if (p.agent_class != g.agent_class) return std::nullopt;
  const auto d = past_distance(p, g, cfg.distance);
  if (!d || *d > cfg.gate) return std::nullopt;
  return d;
}

}  // namespace

std::vector<Match> match_one_to_one(std::span<const PastTrajectory> preds,
                                    std::span<const GtAgent> gts, const MatchConfig& cfg) {
  validate_match_config(cfg);
  check_common_frame(preds);
  CostMatrix cost(preds.size(), gts.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (const auto d = gated_distance(preds[i], gts[j], cfg)) cost(i, j) = *d;
    }
  }
  std::vector<Match> out;
  for (const auto& [r, c] : solve_assignment(cost).pairs) out.push_back({r, c, cost(r, c)});
  return out;
}

std::vector<Match> match_many_to_one(std::span<const PastTrajectory> preds,
                                     std::span<const GtAgent> gts, const MatchConfig& cfg) {
  validate_match_config(cfg);
  check_common_frame(preds);
  std::vector<Match> out;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    std::optional<Match> best;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      const auto d = gated_distance(preds[i], gts[j], cfg);
      if (!d) continue;
      if (!best || *d < best->distance ||
          (*d == best->distance && gts[j].id < gts[best->gt].id)) {
        best = Match{i, j, *d};
      }
    }
    if (best) out.push_back(*best);
  }
  return out;
}

std::vector<Match> match_predictions(std::span<const PastTrajectory> preds,
                                     std::span<const GtAgent> gts, const MatchConfig& cfg) {
  return cfg.assignment == AssignmentMode::kOneToOne ? match_one_to_one(preds, gts, cfg)
                                                     : match_many_to_one(preds, gts, cfg);
}

std::optional<FutureTrajectory> gt_future(const GtAgent& gt, int current_frame,
                                          int horizon_steps) {
  FutureTrajectory fut;
  fut.waypoints.reserve(static_cast<std::size_t>(horizon_steps));
  for (int k = 1; k <= horizon_steps; ++k) {
    const GtSample* s = gt.at(current_frame + k);
    if (s == nullptr) return std::nullopt;
    fut.waypoints.push_back(s->box.center_xy());
  }
  return fut;
}

std::vector<TrainingPair> build_training_pairs(std::span<const Track> tracks,
                                               std::span<const GtAgent> gts,
                                               const MatchConfig& cfg, const TimeBase& time_base,
                                               int current_frame, bool fill_gaps) {
  validate_time_base(time_base);
  std::vector<PastTrajectory> pasts;
  for (const auto& t : tracks) {
    if (auto p = extract_past(t, current_frame, time_base, fill_gaps)) pasts.push_back(*p);
  }
  std::vector<TrainingPair> out;
  for (const Match& m : match_predictions(pasts, gts, cfg)) {
    auto fut = gt_future(gts[m.gt], current_frame, time_base.horizon_steps);
    if (!fut) continue;
    out.push_back({pasts[m.pred], std::move(*fut), gts[m.gt].id, m.distance});
  }
  return out;
}

}  // namespace modcast
