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

#include <array>
#include <vector>

#include "modcast/core.hpp"

namespace modcast {

/// Bird's-eye-view footprint corners, counter-clockwise.
std::array<Vec2, 4> bev_corners(const Box3D& box);

/// Area of the intersection of two convex polygons given counter-clockwise.
double convex_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

/// Signed shoelace area; positive for counter-clockwise polygons.
double polygon_area(const std::vector<Vec2>& poly);

/**
 * 3D IoU for yaw-only oriented boxes: rotated BEV intersection area times the
 * vertical overlap, over the union volume. Throws std::invalid_argument for
 * zero-volume or otherwise invalid boxes.
 */
double iou3d(const Box3D& a, const Box3D& b);

}  // namespace modcast
