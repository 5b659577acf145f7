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

#include "modcast/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "modcast/geometry.hpp"

namespace modcast {

const TrackPoint* Track::at(int frame) const {
  const auto it = std::lower_bound(points.begin(), points.end(), frame,
                                   [](const TrackPoint& p, int f) { return p.frame < f; });
  return (it != points.end() && it->frame == frame) ? &*it : nullptr;
}

void validate_tracker_config(const TrackerConfig& cfg) {
  if (!(cfg.iou_gate >= 0.0 && cfg.iou_gate <= 1.0)) {
    throw std::invalid_argument("iou_gate must lie in [0, 1]");
  }
  if (cfg.max_inactive_frames < 0) throw std::invalid_argument("max_inactive_frames must be >= 0");
  validate_kalman_config(cfg.kalman);
}

CostMatrix association_costs(std::span<const Box3D> predicted, std::span<const Box3D> detected,
                             double iou_gate) {
  CostMatrix cost(predicted.size(), detected.size());
  for (std::size_t r = 0; r < predicted.size(); ++r) {
    for (std::size_t c = 0; c < detected.size(); ++c) {
      const double iou = iou3d(predicted[r], detected[c]);
      if (iou >= iou_gate) cost(r, c) = 1.0 - iou;
    }
  }
  return cost;
}

Tracker::Tracker(TrackerConfig cfg) : cfg_(std::move(cfg)) { validate_tracker_config(cfg_); }

void Tracker::step(int frame, std::span<const Detection> detections) {
  if (last_frame_ && frame != *last_frame_ + 1) {
    throw std::invalid_argument("tracker: frame " + std::to_string(frame) +
                                " does not follow frame " + std::to_string(*last_frame_));
  }
  for (const auto& d : detections) {
    if (d.frame != frame) throw std::invalid_argument("tracker: detection frame mismatch");
    validate_detection(d);
  }
  last_frame_ = frame;

  for (auto& t : live_) t.kalman = kf_predict(t.kalman, cfg_.kalman);

  std::vector<char> track_matched(live_.size(), 0);
  std::vector<char> det_matched(detections.size(), 0);

  for (AgentClass cls : all_agent_classes()) {
    std::vector<std::size_t> tix;
    std::vector<std::size_t> dix;
    for (std::size_t i = 0; i < live_.size(); ++i) {
      if (live_[i].agent_class == cls) tix.push_back(i);
    }
    for (std::size_t j = 0; j < detections.size(); ++j) {
      if (detections[j].agent_class == cls) dix.push_back(j);
    }
    if (tix.empty() || dix.empty()) continue;

    std::vector<Box3D> predicted;
    std::vector<Box3D> detected;
    for (std::size_t i : tix) predicted.push_back(live_[i].kalman.box());
    for (std::size_t j : dix) detected.push_back(detections[j].box);

    const Assignment a = solve_assignment(association_costs(predicted, detected, cfg_.iou_gate));
    for (const auto& [r, c] : a.pairs) {
      Track& t = live_[tix[r]];
      const Detection& d = detections[dix[c]];
      t.kalman = kf_update(t.kalman, d.box, cfg_.kalman);
      ++t.hits;
      t.score += (d.score - t.score) / static_cast<double>(t.hits);
      t.points.push_back({frame, d.box, PointKind::kObserved, d.score});
      t.state = TrackState::kActive;
      t.misses = 0;
      track_matched[tix[r]] = 1;
      det_matched[dix[c]] = 1;
    }
  }

  std::vector<Track> still_live;
  still_live.reserve(live_.size() + detections.size());
  for (std::size_t i = 0; i < live_.size(); ++i) {
    Track& t = live_[i];
    if (!track_matched[i]) {
      ++t.misses;
      if (t.misses > cfg_.max_inactive_frames) {
        t.state = TrackState::kTerminated;
        terminated_.push_back(std::move(t));
        continue;
      }
      t.state = TrackState::kInactive;
      t.points.push_back({frame, t.kalman.box(), PointKind::kPropagated, t.score});
    }
    still_live.push_back(std::move(t));
  }

  for (AgentClass cls : all_agent_classes()) {
    for (std::size_t j = 0; j < detections.size(); ++j) {
      const Detection& d = detections[j];
      if (det_matched[j] || d.agent_class != cls) continue;
      Track t;
      t.id = next_id_++;
      t.agent_class = d.agent_class;
      t.kalman = kf_init(d.box, cfg_.kalman);
      t.hits = 1;
      t.score = d.score;
      t.points.push_back({frame, d.box, PointKind::kObserved, d.score});
      still_live.push_back(std::move(t));
    }
  }
  live_ = std::move(still_live);
}

std::vector<Track> Tracker::all_tracks() const {
  std::vector<Track> out = terminated_;
  out.insert(out.end(), live_.begin(), live_.end());
  std::sort(out.begin(), out.end(), [](const Track& a, const Track& b) { return a.id < b.id; });
  return out;
}

std::vector<Track> track_sequence(std::span<const std::vector<Detection>> frames, int first_frame,
                                  const TrackerConfig& cfg) {
  Tracker tracker(cfg);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    tracker.step(first_frame + static_cast<int>(i), frames[i]);
  }
  return tracker.all_tracks();
}

namespace {

TrackPoint lerp_point(const TrackPoint& a, const TrackPoint& b, int frame) {
  const double u = static_cast<double>(frame - a.frame) / static_cast<double>(b.frame - a.frame);
  auto mix = [u](double x, double y) { return x + u * (y - x); };
  TrackPoint p;
  p.frame = frame;
  p.kind = PointKind::kInterpolated;
  p.score = mix(a.score, b.score);
  p.box.cx = mix(a.box.cx, b.box.cx);
  p.box.cy = mix(a.box.cy, b.box.cy);
  p.box.cz = mix(a.box.cz, b.box.cz);
  p.box.length = mix(a.box.length, b.box.length);
  p.box.width = mix(a.box.width, b.box.width);
  p.box.height = mix(a.box.height, b.box.height);
  p.box.yaw = yaw_normalize(a.box.yaw + u * yaw_normalize(b.box.yaw - a.box.yaw));
  return p;
}

Track fill_between_observed(const Track& track, bool trim_trailing) {
  Track out = track;
  out.points.clear();
  const auto& pts = track.points;
  std::size_t first = 0;
  while (first < pts.size() && !pts[first].observed()) ++first;
  if (first == pts.size()) {
    if (!trim_trailing) out.points = pts;
    return out;
  }
  std::size_t last = pts.size() - 1;
  while (!pts[last].observed()) --last;

  out.points.push_back(pts[first]);
  std::size_t prev = first;
  for (std::size_t i = first + 1; i <= last; ++i) {
    if (!pts[i].observed()) continue;
    for (int f = pts[prev].frame + 1; f < pts[i].frame; ++f) {
      out.points.push_back(lerp_point(pts[prev], pts[i], f));
    }
    out.points.push_back(pts[i]);
    prev = i;
  }
  if (!trim_trailing) {
    out.points.insert(out.points.end(), pts.begin() + static_cast<std::ptrdiff_t>(last) + 1,
                      pts.end());
  }
  return out;
}

}  // namespace

Track interpolate_gaps(const Track& track) { return fill_between_observed(track, true); }

Track fill_interior_gaps(const Track& track) { return fill_between_observed(track, false); }

Track reported_points(const Track& track, bool include_interpolated, bool include_propagated) {
  Track out = track;
  std::erase_if(out.points, [&](const TrackPoint& p) {
    switch (p.kind) {
      case PointKind::kObserved: return false;
      case PointKind::kInterpolated: return !include_interpolated;
      case PointKind::kPropagated: return !include_propagated;
    }
    return true;
  });
  return out;
}

std::optional<PastTrajectory> extract_past(const Track& track, int current_frame,
                                           const TimeBase& time_base, bool fill_gaps) {
  if (track.at(current_frame) == nullptr) return std::nullopt;
  const int earliest = current_frame - time_base.past_steps();

  Track window = track;
  std::erase_if(window.points, [&](const TrackPoint& p) { return p.frame > current_frame; });
  if (fill_gaps) window = fill_interior_gaps(window);

  PastTrajectory past;
  past.agent_id = track.id;
  past.agent_class = track.agent_class;
  past.current_frame = current_frame;
  for (const auto& p : window.points) {
    if (p.frame < earliest) continue;
    past.samples.push_back({p.frame - current_frame, p.box.cx, p.box.cy, p.box.yaw, p.observed()});
  }
  past.score = window.points.back().score;
  return past;
}

}  // namespace modcast
