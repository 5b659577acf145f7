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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modcast/core.hpp"
#include "modcast/tracker.hpp"

namespace modcast {

enum class AssignmentMode : std::uint8_t { kOneToOne, kManyToOne };
enum class DistanceMode : std::uint8_t { kAtT0, kAllPast };

struct MatchConfig {
  AssignmentMode assignment = AssignmentMode::kManyToOne;
  DistanceMode distance = DistanceMode::kAllPast;
  double gate = 2.0;  ///< meters; pairs farther apart are never matched
};

void validate_match_config(const MatchConfig& cfg);

/**
 * Distance between a predicted past and a ground-truth agent. kAtT0 uses the
 * current frame only; kAllPast averages over every past frame where both
 * exist. nullopt when there is no common frame.
 */
std::optional<double> past_distance(const PastTrajectory& pred, const GtAgent& gt,
                                    DistanceMode mode);

struct Match {
  std::size_t pred = 0;  ///< index into the predictions
  std::size_t gt = 0;    ///< index into the ground-truth agents
  double distance = 0.0;
};

/// Minimum-total-distance matching over gated same-class pairs. Output sorted by pred.
std::vector<Match> match_one_to_one(std::span<const PastTrajectory> preds,
                                    std::span<const GtAgent> gts, const MatchConfig& cfg);

/// Each prediction independently takes its nearest gated same-class gt (ties: lowest gt id).
std::vector<Match> match_many_to_one(std::span<const PastTrajectory> preds,
                                     std::span<const GtAgent> gts, const MatchConfig& cfg);

std::vector<Match> match_predictions(std::span<const PastTrajectory> preds,
                                     std::span<const GtAgent> gts, const MatchConfig& cfg);

struct TrainingPair {
  PastTrajectory predicted_past;
  FutureTrajectory gt_future;
  std::int64_t gt_agent_id = 0;
  double match_distance = 0.0;
};

/// Ground-truth positions at frames current+1 .. current+horizon, or nullopt if incomplete.
std::optional<FutureTrajectory> gt_future(const GtAgent& gt, int current_frame, int horizon_steps);

/**
 * Supervision pairs at one inference frame: the past of every track alive at
 * `current_frame` is matched against the ground truth, and each match whose
 * gt has a complete future horizon yields one pair.
 */
std::vector<TrainingPair> build_training_pairs(std::span<const Track> tracks,
                                               std::span<const GtAgent> gts,
                                               const MatchConfig& cfg, const TimeBase& time_base,
                                               int current_frame, bool fill_gaps = true);

}  // namespace modcast
