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

#include "modcast/render.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace modcast {

namespace {

const char* class_color(AgentClass c) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#8c564b", "#e377c2", "#ff7f0e", "#17becf",
                                             "#bcbd22", "#7f7f7f"};
  return kPalette[static_cast<std::size_t>(c) % std::size(kPalette)];
}

struct Frame {
  double min_x, max_y, scale;

  double sx(double x) const { return (x - min_x) * scale; }
  double sy(double y) const { return (max_y - y) * scale; }
};

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void polyline(std::ostream& o, const Frame& f, const std::vector<Vec2>& pts, const char* color,
              const char* extra) {
  if (pts.size() < 2) return;
  o << "<polyline fill=\"none\" stroke=\"" << color << "\" " << extra << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) o << ' ';
    o << f.sx(pts[i].x) << ',' << f.sy(pts[i].y);
  }
  o << "\"/>\n";
}

int default_frame(const SceneData& d) {
  if (!d.forecasts.empty()) return d.forecasts.front().frame;
  return d.scene.frames > 0 ? d.scene.frames / 2 : 0;
}

}  // namespace

std::string render_svg(const SceneData& data, const RenderOptions& opts) {
  if (!(opts.pixels_per_meter > 0.0)) throw std::invalid_argument("pixels_per_meter must be > 0");
  const int t0 = opts.frame.value_or(default_frame(data));

  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = lo_x, hi_y = -lo_x;
  auto grow = [&](Vec2 p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (const auto& g : data.scene.agents)
    for (const auto& s : g.samples) grow(s.box.center_xy());
  for (const auto& r : data.forecasts) {
    if (r.frame != t0) continue;
    for (const auto& m : r.forecast.modes)
      for (const auto& w : m.trajectory.waypoints) grow(w);
  }
  if (!std::isfinite(lo_x)) lo_x = hi_x = lo_y = hi_y = 0.0;
  lo_x -= opts.margin_m;
  hi_x += opts.margin_m;
  lo_y -= opts.margin_m;
  hi_y += opts.margin_m;

  const Frame f{lo_x, hi_y, opts.pixels_per_meter};
  std::ostringstream o;
  o.precision(6);
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (hi_x - lo_x) * f.scale
    << "\" height=\"" << (hi_y - lo_y) * f.scale << "\">\n"
    << "<title>" << escape(data.scene.scene_id) << " frame " << t0 << "</title>\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  o << "<g id=\"ground-truth\">\n";
  for (const auto& g : data.scene.agents) {
    const GtSample* now = g.at(t0);
    if (now == nullptr) continue;
    o << "<g class=\"gt\" data-id=\"" << g.id << "\" data-class=\"" << class_name(g.agent_class)
      << "\">\n";
    std::vector<Vec2> fut;
    for (const auto& s : g.samples)
      if (s.frame >= t0) fut.push_back(s.box.center_xy());
    polyline(o, f, fut, "#999999", "stroke-width=\"1\"");
    o << "<circle cx=\"" << f.sx(now->box.cx) << "\" cy=\"" << f.sy(now->box.cy)
      << "\" r=\"3\" fill=\"#999999\"/>\n</g>\n";
  }
  o << "</g>\n";

  o << "<g id=\"tracks\">\n";
  for (const auto& t : data.tracks) {
    const auto* now = t.at(t0);
    if (now == nullptr) continue;
    const char* color = class_color(t.agent_class);
    o << "<g class=\"agent\" data-track=\"" << t.id << "\" data-class=\""
      << class_name(t.agent_class) << "\">\n";
    std::vector<Vec2> past;
    for (const auto& p : t.points)
      if (p.frame <= t0) past.push_back(p.box.center_xy());
    polyline(o, f, past, color, "stroke-width=\"1.5\" stroke-dasharray=\"2,3\"");
    for (const auto& r : data.forecasts) {
      if (r.frame != t0 || r.track_id != t.id) continue;
      for (const auto& m : r.forecast.modes) {
        std::vector<Vec2> pts{r.current};
        pts.insert(pts.end(), m.trajectory.waypoints.begin(), m.trajectory.waypoints.end());
        std::ostringstream extra;
        extra << "stroke-width=\"1.5\" stroke-opacity=\"" << std::clamp(0.3 + 0.7 * m.score, 0.0, 1.0)
              << "\"";
        polyline(o, f, pts, color, extra.str().c_str());
      }
    }
    o << "<circle cx=\"" << f.sx(now->box.cx) << "\" cy=\"" << f.sy(now->box.cy)
      << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    if (opts.show_scores) {
      o << "<text x=\"" << f.sx(now->box.cx) + 5 << "\" y=\"" << f.sy(now->box.cy) - 5
        << "\" font-size=\"9\" fill=\"" << color << "\">" << std::round(now->score * 100) / 100
        << "</text>\n";
    }
    o << "</g>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace modcast
