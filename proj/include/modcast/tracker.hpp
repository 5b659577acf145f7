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

#include "modcast/assignment.hpp"
#include "modcast/core.hpp"
#include "modcast/kalman.hpp"

namespace modcast {

enum class PointKind : std::uint8_t {
  kObserved,      ///< associated with a detection at this frame
  kPropagated,    ///< Kalman prediction while the track was inactive
  kInterpolated,  ///< filled in offline between two observed points
};

struct TrackPoint {
  int frame = 0;
  Box3D box;
  PointKind kind = PointKind::kObserved;
  double score = 0.0;

  bool observed() const { return kind == PointKind::kObserved; }
};

enum class TrackState : std::uint8_t { kActive, kInactive, kTerminated };

struct Track {
  std::int64_t id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  std::vector<TrackPoint> points;
  KalmanState kalman;
  TrackState state = TrackState::kActive;
  int misses = 0;     ///< consecutive unmatched frames while inactive
  int hits = 0;       ///< number of associated detections
  double score = 0.0; ///< running mean of associated detection scores

  const TrackPoint* at(int frame) const;
};

struct TrackerConfig {
  double iou_gate = 0.1;
  int max_inactive_frames = 3;
  KalmanConfig kalman;
};

void validate_tracker_config(const TrackerConfig& cfg);

/**
 * Association costs 1 - IoU between predicted track boxes (rows) and
 * detection boxes (cols); pairs with IoU below the gate are forbidden.
 */
CostMatrix association_costs(std::span<const Box3D> predicted, std::span<const Box3D> detected,
                             double iou_gate);

/**
 * Online per-class tracker: Kalman prediction, exact one-to-one IoU
 * association, inactive lifecycle bounded by max_inactive_frames.
 * One instance per scene; not thread-safe.
 */
class Tracker {
 public:
  explicit Tracker(TrackerConfig cfg = {});

  /// Consumes the detections of `frame`, which must directly follow the previous frame.
  void step(int frame, std::span<const Detection> detections);

  const std::vector<Track>& live_tracks() const { return live_; }
  const std::vector<Track>& terminated_tracks() const { return terminated_; }
  /// Every track created so far, ordered by id.
  std::vector<Track> all_tracks() const;
  std::optional<int> last_frame() const { return last_frame_; }
  const TrackerConfig& config() const { return cfg_; }

 private:
  TrackerConfig cfg_;
  std::vector<Track> live_;
  std::vector<Track> terminated_;
  std::int64_t next_id_ = 0;
  std::optional<int> last_frame_;
};

/// Runs a fresh tracker over consecutive frames [first, first + frames.size()).
std::vector<Track> track_sequence(std::span<const std::vector<Detection>> frames, int first_frame,
                                  const TrackerConfig& cfg);

/**
 * Offline gap filling. Every run of non-observed points bounded by observed
 * points is replaced by a linear interpolation (yaw along the shorter arc);
 * leading and trailing non-observed points are removed.
 */
Track interpolate_gaps(const Track& track);

/// Same interpolation as interpolate_gaps() but keeps trailing propagated points.
Track fill_interior_gaps(const Track& track);

/// Keeps only points of the given kinds (e.g. observed + interpolated for reporting).
Track reported_points(const Track& track, bool include_interpolated, bool include_propagated);

/**
 * History of a track as seen at `current_frame`, limited to the past window.
 * Points after `current_frame` are never looked at, so with `fill_gaps` the
 * interior interpolation only uses observations available online. Empty when
 * the track has no point at `current_frame`.
 */
std::optional<PastTrajectory> extract_past(const Track& track, int current_frame,
                                           const TimeBase& time_base, bool fill_gaps = false);

}  // namespace modcast
