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

#include "modcast/scene_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace modcast {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

void put_box(ojson& j, const Box3D& b) {
  j["cx"] = b.cx;
  j["cy"] = b.cy;
  j["cz"] = b.cz;
  j["yaw"] = b.yaw;
  j["l"] = b.length;
  j["w"] = b.width;
  j["h"] = b.height;
}

double num(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw std::invalid_argument(std::string("field '") + key + "' is not finite");
  return x;
}

int integer(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

std::int64_t integer64(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
  }
  return j.at(key).get<std::int64_t>();
}

std::string text(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

Box3D get_box(const json& j) {
  Box3D b;
  b.cx = num(j, "cx");
  b.cy = num(j, "cy");
  b.cz = num(j, "cz");
  b.yaw = num(j, "yaw");
  b.length = num(j, "l");
  b.width = num(j, "w");
  b.height = num(j, "h");
  validate_box(b);
  return b;
}

ojson forecast_json(const ForecastSet& fs) {
  ojson modes = ojson::array();
  for (const auto& m : fs.modes) {
    ojson xy = ojson::array();
    for (const auto& w : m.trajectory.waypoints) xy.push_back({w.x, w.y});
    modes.push_back({{"score", m.score}, {"xy", std::move(xy)}});
  }
  return modes;
}

ForecastSet parse_forecast(const json& modes) {
  if (!modes.is_array()) throw std::invalid_argument("field 'modes' must be an array");
  ForecastSet fs;
  for (const auto& m : modes) {
    ForecastMode mode;
    mode.score = num(m, "score");
    if (!m.contains("xy") || !m.at("xy").is_array()) throw std::invalid_argument("mode without 'xy'");
    for (const auto& p : m.at("xy")) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw std::invalid_argument("waypoints must be [x, y] pairs");
      }
      const Vec2 w{p[0].get<double>(), p[1].get<double>()};
      if (!std::isfinite(w.x) || !std::isfinite(w.y)) throw std::invalid_argument("waypoint not finite");
      mode.trajectory.waypoints.push_back(w);
    }
    fs.modes.push_back(std::move(mode));
  }
  if (fs.modes.empty()) throw std::invalid_argument("forecast without modes");
  return fs;
}

ojson past_json(const PastTrajectory& p) {
  ojson arr = ojson::array();
  for (const auto& s : p.samples) arr.push_back({s.frame, s.x, s.y, s.yaw, s.observed});
  return arr;
}

}  // namespace

DataError::DataError(std::size_t line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
      line_(line) {}

std::string point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::kObserved: return "observed";
    case PointKind::kPropagated: return "propagated";
    case PointKind::kInterpolated: return "interpolated";
  }
  return "observed";
}

PointKind parse_point_kind(const std::string& s) {
  if (s == "observed") return PointKind::kObserved;
  if (s == "propagated") return PointKind::kPropagated;
  if (s == "interpolated") return PointKind::kInterpolated;
  throw std::invalid_argument("unknown point kind '" + s + "'");
}

std::vector<std::vector<Detection>> detections_by_frame(const SceneData& data) {
  std::vector<std::vector<Detection>> frames(static_cast<std::size_t>(data.scene.frames));
  for (const auto& d : data.detections) frames.at(static_cast<std::size_t>(d.frame)).push_back(d);
  return frames;
}

std::vector<Detection> flatten_frames(const std::vector<std::vector<Detection>>& frames) {
  std::vector<Detection> out;
  for (const auto& f : frames) out.insert(out.end(), f.begin(), f.end());
  return out;
}

void write_scene(std::ostream& out, const SceneData& data) {
  const Scene& sc = data.scene;
  out << ojson{{"kind", "header"}, {"scene_id", sc.scene_id}, {"hz", sc.hz}, {"frames", sc.frames}}
             .dump()
      << '\n';

  const auto dets = detections_by_frame(data);
  std::vector<std::vector<const ForecastRecord*>> fcs(static_cast<std::size_t>(sc.frames));
  for (const auto& f : data.forecasts) fcs.at(static_cast<std::size_t>(f.frame)).push_back(&f);

  for (int f = 0; f < sc.frames; ++f) {
    for (const auto& a : sc.agents) {
      const GtSample* s = a.at(f);
      if (s == nullptr) continue;
      ojson j{{"kind", "gt"}, {"frame", f}, {"id", a.id}, {"class", class_name(a.agent_class)}};
      put_box(j, s->box);
      out << j.dump() << '\n';
    }
    for (const auto& d : dets[static_cast<std::size_t>(f)]) {
      ojson j{{"kind", "det"}, {"frame", f}, {"class", class_name(d.agent_class)}, {"score", d.score}};
      j["source_model"] = d.source_model ? ojson(*d.source_model) : ojson(nullptr);
      put_box(j, d.box);
      out << j.dump() << '\n';
    }
    for (const auto& t : data.tracks) {
      const TrackPoint* p = t.at(f);
      if (p == nullptr) continue;
      ojson j{{"kind", "trk"}, {"frame", f}, {"id", t.id}, {"class", class_name(t.agent_class)},
              {"score", p->score}, {"point", point_kind_name(p->kind)}};
      put_box(j, p->box);
      out << j.dump() << '\n';
    }
    for (const ForecastRecord* r : fcs[static_cast<std::size_t>(f)]) {
      ojson j{{"kind", "fc"},        {"frame", f},         {"track_id", r->track_id},
              {"class", class_name(r->agent_class)}, {"score", r->score}, {"cx", r->current.x},
              {"cy", r->current.y}};
      j["modes"] = forecast_json(r->forecast);
      out << j.dump() << '\n';
    }
  }
}

SceneData read_scene(std::istream& in) {
  SceneData data;
  bool have_header = false;
  std::map<std::int64_t, GtAgent> agents;
  std::map<std::int64_t, Track> tracks;
  std::vector<std::int64_t> agent_order;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
      }
      if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
      const std::string kind = text(j, "kind");
      if (!have_header) {
        if (kind != "header") throw std::invalid_argument("first record must be the header");
        data.scene.scene_id = text(j, "scene_id");
        data.scene.hz = num(j, "hz");
        data.scene.frames = integer(j, "frames");
        if (!(data.scene.hz > 0.0)) throw std::invalid_argument("header hz must be > 0");
        if (data.scene.frames < 1) throw std::invalid_argument("header frames must be >= 1");
        have_header = true;
        continue;
      }
      if (kind == "header") throw std::invalid_argument("duplicate header");

      const int frame = integer(j, "frame");
      if (frame < 0 || frame >= data.scene.frames) {
        throw std::invalid_argument("frame " + std::to_string(frame) + " outside declared range");
      }
      const AgentClass cls = parse_agent_class(text(j, "class"));

      if (kind == "gt") {
        const std::int64_t id = integer64(j, "id");
        auto [it, inserted] = agents.try_emplace(id);
        if (inserted) {
          agent_order.push_back(id);
          it->second.id = id;
          it->second.agent_class = cls;
        } else if (it->second.agent_class != cls) {
          throw std::invalid_argument("gt agent changes class");
        }
        if (!it->second.samples.empty() && it->second.samples.back().frame + 1 != frame) {
          throw std::invalid_argument("gt agent frames must be contiguous and increasing");
        }
        it->second.samples.push_back({frame, get_box(j)});
      } else if (kind == "det") {
        Detection d;
        d.frame = frame;
        d.agent_class = cls;
        d.score = num(j, "score");
        if (j.contains("source_model") && !j.at("source_model").is_null()) {
          d.source_model = integer(j, "source_model");
        }
        d.box = get_box(j);
        validate_detection(d);
        data.detections.push_back(d);
      } else if (kind == "trk") {
        const std::int64_t id = integer64(j, "id");
        auto [it, inserted] = tracks.try_emplace(id);
        if (inserted) {
          it->second.id = id;
          it->second.agent_class = cls;
        } else if (it->second.agent_class != cls) {
          throw std::invalid_argument("track changes class");
        }
        if (!it->second.points.empty() && it->second.points.back().frame >= frame) {
          throw std::invalid_argument("track frames must be strictly increasing");
        }
        TrackPoint p;
        p.frame = frame;
        p.score = num(j, "score");
        p.kind = parse_point_kind(text(j, "point"));
        p.box = get_box(j);
        it->second.points.push_back(p);
      } else if (kind == "fc") {
        ForecastRecord r;
        r.frame = frame;
        r.track_id = integer64(j, "track_id");
        r.agent_class = cls;
        r.score = num(j, "score");
        r.current = {num(j, "cx"), num(j, "cy")};
        if (!j.contains("modes")) throw std::invalid_argument("missing field 'modes'");
        r.forecast = parse_forecast(j.at("modes"));
        data.forecasts.push_back(std::move(r));
      } else {
        throw std::invalid_argument("unknown record kind '" + kind + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw DataError(lineno, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(lineno, e.what());
    }
  }
  if (!have_header) throw DataError(lineno, "missing header record");

  for (std::int64_t id : agent_order) data.scene.agents.push_back(std::move(agents[id]));
  for (auto& [id, t] : tracks) {
    t.hits = static_cast<int>(std::count_if(t.points.begin(), t.points.end(),
                                            [](const TrackPoint& p) { return p.observed(); }));
    t.state = TrackState::kTerminated;
    data.tracks.push_back(std::move(t));
  }
  std::stable_sort(data.detections.begin(), data.detections.end(),
                   [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
  return data;
}

void write_scene_file(const std::string& path, const SceneData& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_scene(out, data);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

SceneData read_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(0, "cannot open '" + path + "'");
  return read_scene(in);
}

void write_pairs(std::ostream& out, const std::string& scene_id,
                 const std::vector<TrainingPair>& pairs) {
  out << ojson{{"kind", "pairs_header"}, {"scene_id", scene_id}, {"count", pairs.size()}}.dump()
      << '\n';
  for (const auto& p : pairs) {
    ojson fut = ojson::array();
    for (const auto& w : p.gt_future.waypoints) fut.push_back({w.x, w.y});
    ojson j{{"kind", "pair"},
            {"frame", p.predicted_past.current_frame},
            {"track_id", p.predicted_past.agent_id},
            {"gt_id", p.gt_agent_id},
            {"class", class_name(p.predicted_past.agent_class)},
            {"score", p.predicted_past.score},
            {"distance", p.match_distance}};
    j["past"] = past_json(p.predicted_past);
    j["future"] = std::move(fut);
    out << j.dump() << '\n';
  }
}

std::vector<TrainingPair> read_pairs(std::istream& in) {
  std::vector<TrainingPair> out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string kind = text(j, "kind");
      if (!have_header) {
        if (kind != "pairs_header") throw std::invalid_argument("first record must be pairs_header");
        have_header = true;
        continue;
      }
      if (kind != "pair") throw std::invalid_argument("unknown record kind '" + kind + "'");
      TrainingPair p;
      p.predicted_past.current_frame = integer(j, "frame");
      p.predicted_past.agent_id = integer64(j, "track_id");
      p.predicted_past.agent_class = parse_agent_class(text(j, "class"));
      p.predicted_past.score = num(j, "score");
      p.gt_agent_id = integer64(j, "gt_id");
      p.match_distance = num(j, "distance");
      for (const auto& s : j.at("past")) {
        p.predicted_past.samples.push_back(
            {s.at(0).get<int>(), s.at(1).get<double>(), s.at(2).get<double>(),
             s.at(3).get<double>(), s.at(4).get<bool>()});
      }
      for (const auto& w : j.at("future")) {
        p.gt_future.waypoints.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
      }
      validate_past(p.predicted_past);
      out.push_back(std::move(p));
    } catch (const std::invalid_argument& e) {
      throw DataError(lineno, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(lineno, e.what());
    }
  }
  if (!have_header) throw DataError(lineno, "missing pairs_header record");
  return out;
}

}  // namespace modcast
