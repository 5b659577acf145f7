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

#include <map>
#include <span>
#include <vector>

#include "modcast/core.hpp"

namespace modcast {

struct EnsembleConfig {
  double radius = 1.0;                           ///< merge radius in meters
  std::map<AgentClass, double> class_radius;     ///< per-class overrides

  double radius_for(AgentClass c) const;
};

void validate_ensemble_config(const EnsembleConfig& cfg);

/**
 * Score-weighted fusion of one cluster. Center and dimensions are weighted
 * means, yaw is the weighted circular mean, the fused score is the cluster
 * maximum and the source model tag is cleared.
 */
Detection fuse_group(std::span<const Detection> group);

/**
 * Greedy confidence-ordered fusion of all model outputs of a single frame.
 * Per class, the highest-scored remaining detection becomes the reference and
 * absorbs every remaining detection closer than the class radius.
 */
std::vector<Detection> merge_frame(std::span<const Detection> detections,
                                   const EnsembleConfig& cfg);

}  // namespace modcast
