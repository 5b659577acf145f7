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

#include <optional>
#include <string>

#include "modcast/scene_io.hpp"

namespace modcast {

struct RenderOptions {
  std::optional<int> frame;  ///< inference frame to draw; defaults to the first forecast frame
  double pixels_per_meter = 8.0;
  double margin_m = 5.0;
  bool show_scores = true;
};

/**
 * Bird's-eye-view SVG of one frame: gt positions and futures in gray, track
 * pasts dotted, forecast modes solid, colored per class. Each agent is one <g>.
 */
std::string render_svg(const SceneData& data, const RenderOptions& opts = {});

}  // namespace modcast
