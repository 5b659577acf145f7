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

#include "modcast/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace modcast {

double EnsembleConfig::radius_for(AgentClass c) const {
  const auto it = class_radius.find(c);
  return it == class_radius.end() ? radius : it->second;
}

void validate_ensemble_config(const EnsembleConfig& cfg) {
  if (!(cfg.radius > 0.0)) throw std::invalid_argument("ensemble radius must be > 0");
  for (const auto& [cls, r] : cfg.class_radius) {
    if (!(r > 0.0)) throw std::invalid_argument("ensemble radius must be > 0");
  }
}

Detection fuse_group(std::span<const Detection> group) {
  if (group.empty()) throw std::invalid_argument("fuse_group: empty group");
  const Detection& first = group.front();
  for (const auto& d : group) {
    if (d.agent_class != first.agent_class || d.frame != first.frame) {
      throw std::invalid_argument("fuse_group: detections must share class and frame");
    }
  }

  if (group.size() == 1) {
    Detection out = first;
    out.source_model.reset();
    return out;
  }

  double wsum = 0.0;
  for (const auto& d : group) wsum += d.score;
  const bool uniform = !(wsum > 0.0);
  if (uniform) wsum = static_cast<double>(group.size());

  Box3D fused{0, 0, 0, 0, 0, 0, 0};
  double sin_acc = 0.0;
  double cos_acc = 0.0;
  double best = 0.0;
  for (const auto& d : group) {
    const double w = (uniform ? 1.0 : d.score) / wsum;
    fused.cx += w * d.box.cx;
    fused.cy += w * d.box.cy;
    fused.cz += w * d.box.cz;
    fused.length += w * d.box.length;
    fused.width += w * d.box.width;
    fused.height += w * d.box.height;
    sin_acc += w * std::sin(d.box.yaw);
    cos_acc += w * std::cos(d.box.yaw);
    best = std::max(best, d.score);
  }
  const bool same_yaw = std::all_of(group.begin(), group.end(),
                                    [&](const Detection& d) { return d.box.yaw == first.box.yaw; });
  fused.yaw = same_yaw ? first.box.yaw : yaw_normalize(std::atan2(sin_acc, cos_acc));

  Detection out;
  out.box = fused;
  out.agent_class = first.agent_class;
  out.score = best;
  out.frame = first.frame;
  out.source_model.reset();
  return out;
}

namespace {

bool higher_priority(const Detection& a, const Detection& b) {
  if (a.score != b.score) return a.score > b.score;
  const int sa = a.source_model.value_or(-1);
  const int sb = b.source_model.value_or(-1);
  return std::tie(a.box.cx, a.box.cy, sa) < std::tie(b.box.cx, b.box.cy, sb);
}

}  // namespace

std::vector<Detection> merge_frame(std::span<const Detection> detections,
                                   const EnsembleConfig& cfg) {
  validate_ensemble_config(cfg);
  std::vector<Detection> out;
  if (detections.empty()) return out;
  const int frame = detections.front().frame;
  for (const auto& d : detections) {
    if (d.frame != frame) throw std::invalid_argument("merge_frame: mixed frame indices");
  }

  std::vector<Detection> pool(detections.begin(), detections.end());
  std::stable_sort(pool.begin(), pool.end(), higher_priority);
  std::vector<char> taken(pool.size(), 0);

  for (std::size_t ref = 0; ref < pool.size(); ++ref) {
    if (taken[ref]) continue;
    const double r = cfg.radius_for(pool[ref].agent_class);
    std::vector<Detection> group;
    for (std::size_t j = ref; j < pool.size(); ++j) {
      if (taken[j] || pool[j].agent_class != pool[ref].agent_class) continue;
      if (center_distance_2d(pool[ref].box, pool[j].box) < r) {
        taken[j] = 1;
        group.push_back(pool[j]);
      }
    }
    out.push_back(fuse_group(group));
  }
  std::stable_sort(out.begin(), out.end(), higher_priority);
  return out;
}

}  // namespace modcast
