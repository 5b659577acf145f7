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

#include "modcast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace modcast {

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

Vec2 line_intersection(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double a1 = cross(q1, q2, p1);
  const double a2 = cross(q1, q2, p2);
  const double t = a1 / (a1 - a2);
  return p1 + t * (p2 - p1);
}

}  // namespace

std::array<Vec2, 4> bev_corners(const Box3D& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const std::array<Vec2, 4> local{{{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}}};
  std::array<Vec2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = {box.cx + c * local[i].x - s * local[i].y, box.cy + s * local[i].x + c * local[i].y};
  }
  return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double acc = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * acc;
}

// Sutherland-Hodgman: clip `a` successively by each edge of convex `b`.
double convex_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  std::vector<Vec2> out = a;
  for (std::size_t e = 0; e < b.size() && !out.empty(); ++e) {
    const Vec2 c1 = b[e];
    const Vec2 c2 = b[(e + 1) % b.size()];
    std::vector<Vec2> in;
    in.swap(out);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Vec2 cur = in[i];
      const Vec2 prev = in[(i + in.size() - 1) % in.size()];
      const bool cur_in = cross(c1, c2, cur) >= 0.0;
      const bool prev_in = cross(c1, c2, prev) >= 0.0;
      if (cur_in) {
        if (!prev_in) out.push_back(line_intersection(prev, cur, c1, c2));
        out.push_back(cur);
      } else if (prev_in) {
        out.push_back(line_intersection(prev, cur, c1, c2));
      }
    }
  }
  if (out.size() < 3) return 0.0;
  return std::max(0.0, polygon_area(out));
}

namespace {

bool box_less(const Box3D& a, const Box3D& b) {
  return std::tie(a.cx, a.cy, a.cz, a.length, a.width, a.height, a.yaw) <
         std::tie(b.cx, b.cy, b.cz, b.length, b.width, b.height, b.yaw);
}

double iou3d_ordered(const Box3D& a, const Box3D& b);

}  // namespace

double iou3d(const Box3D& a, const Box3D& b) {
  // Fixed argument order makes the floating-point result exactly symmetric.
  return box_less(b, a) ? iou3d_ordered(b, a) : iou3d_ordered(a, b);
}

namespace {

double iou3d_ordered(const Box3D& a, const Box3D& b) {
  validate_box(a);
  validate_box(b);
  const double va = a.volume();
  const double vb = b.volume();
  if (!(va > 0.0) || !(vb > 0.0)) throw std::invalid_argument("iou3d: zero-volume box");

  if (a == b) return 1.0;

  // Cheap reject on circumscribed circles.
  const double ra = 0.5 * std::hypot(a.length, a.width);
  const double rb = 0.5 * std::hypot(b.length, b.width);
  if (center_distance_2d(a, b) >= ra + rb) return 0.0;

  const double z_lo = std::max(a.cz - 0.5 * a.height, b.cz - 0.5 * b.height);
  const double z_hi = std::min(a.cz + 0.5 * a.height, b.cz + 0.5 * b.height);
  const double dz = z_hi - z_lo;
  if (dz <= 0.0) return 0.0;

  const auto ca = bev_corners(a);
  const auto cb = bev_corners(b);
  const double area = convex_intersection_area({ca.begin(), ca.end()}, {cb.begin(), cb.end()});
  const double inter = area * dz;
  const double uni = va + vb - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace

}  // namespace modcast
