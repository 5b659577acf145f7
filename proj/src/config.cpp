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

#include "modcast/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace modcast {

namespace {

using json = nlohmann::json;
using Setter = std::function<void(const json&)>;

void apply_section(const json& doc, const std::string& section,
                   const std::map<std::string, Setter>& setters) {
  if (!doc.is_object()) throw std::invalid_argument("config section '" + section + "' must be an object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown config key '" + section + "." + key + "'");
    }
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw std::invalid_argument("bad value for '" + section + "." + key + "': " + e.what());
    }
  }
}

template <typename T>
Setter set(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

std::map<AgentClass, double> class_map_from(const json& v) {
  std::map<AgentClass, double> out;
  for (const auto& [name, w] : v.items()) out[parse_agent_class(name)] = w.get<double>();
  return out;
}

nlohmann::ordered_json class_map_to(const std::map<AgentClass, double>& m) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [c, w] : m) out[std::string(class_name(c))] = w;
  return out;
}

}  // namespace

std::string to_string(AssignmentMode m) {
  return m == AssignmentMode::kOneToOne ? "one-one" : "many-one";
}

std::string to_string(DistanceMode m) { return m == DistanceMode::kAtT0 ? "t0" : "all"; }

std::string to_string(ForecasterKind k) {
  return k == ForecasterKind::kOracle ? "oracle" : "cv";
}

AssignmentMode parse_assignment_mode(const std::string& s) {
  if (s == "one-one") return AssignmentMode::kOneToOne;
  if (s == "many-one") return AssignmentMode::kManyToOne;
  throw std::invalid_argument("assignment must be 'one-one' or 'many-one', got '" + s + "'");
}

DistanceMode parse_distance_mode(const std::string& s) {
  if (s == "t0") return DistanceMode::kAtT0;
  if (s == "all") return DistanceMode::kAllPast;
  throw std::invalid_argument("distance must be 't0' or 'all', got '" + s + "'");
}

ForecasterKind parse_forecaster_kind(const std::string& s) {
  if (s == "cv") return ForecasterKind::kConstantVelocity;
  if (s == "oracle") return ForecasterKind::kOracle;
  throw std::invalid_argument("forecaster must be 'cv' or 'oracle', got '" + s + "'");
}

void finalize_config(PipelineConfig& cfg) {
  validate_time_base(cfg.sim.time);
  cfg.forecast.horizon_steps = cfg.sim.time.horizon_steps;
  validate_sim_config(cfg.sim);
  validate_noise_config(cfg.noise);
  validate_ensemble_config(cfg.ensemble);
  validate_tracker_config(cfg.tracker);
  validate_match_config(cfg.match);
  validate_forecast_config(cfg.forecast);
  validate_metric_config(cfg.metrics);
  if (cfg.inference_stride < 1) throw std::invalid_argument("inference_stride must be >= 1");
  if (cfg.num_scenes < 1) throw std::invalid_argument("num_scenes must be >= 1");
}

void apply_config_json(PipelineConfig& cfg, const nlohmann::json& doc) {
  const std::map<std::string, Setter> sections{
      {"time",
       [&](const json& s) {
         apply_section(s, "time", {{"hz", set(cfg.sim.time.hz)},
                                   {"past_window_s", set(cfg.sim.time.past_window_s)},
                                   {"horizon_steps", set(cfg.sim.time.horizon_steps)}});
       }},
      {"sim",
       [&](const json& s) {
         apply_section(s, "sim",
                       {{"n_agents", set(cfg.sim.n_agents)},
                        {"fraction_static", set(cfg.sim.fraction_static)},
                        {"fraction_linear", set(cfg.sim.fraction_linear)},
                        {"fraction_turning", set(cfg.sim.fraction_turning)},
                        {"speed_min", set(cfg.sim.speed_min)},
                        {"speed_max", set(cfg.sim.speed_max)},
                        {"turn_radius_min", set(cfg.sim.turn_radius_min)},
                        {"turn_radius_max", set(cfg.sim.turn_radius_max)},
                        {"scene_len", set(cfg.sim.scene_len)},
                        {"map_extent", set(cfg.sim.map_extent)},
                        {"min_separation", set(cfg.sim.min_separation)},
                        {"class_mix", [&](const json& v) { cfg.sim.class_mix = class_map_from(v); }}});
       }},
      {"noise",
       [&](const json& s) {
         apply_section(s, "noise", {{"p_fn", set(cfg.noise.p_fn)},
                                    {"fp_rate", set(cfg.noise.fp_rate)},
                                    {"sigma_xy", set(cfg.noise.sigma_xy)},
                                    {"sigma_z", set(cfg.noise.sigma_z)},
                                    {"sigma_yaw", set(cfg.noise.sigma_yaw)},
                                    {"sigma_dims", set(cfg.noise.sigma_dims)},
                                    {"s_lo_tp", set(cfg.noise.s_lo_tp)},
                                    {"s_hi_fp", set(cfg.noise.s_hi_fp)},
                                    {"n_models", set(cfg.noise.n_models)}});
       }},
      {"ensemble",
       [&](const json& s) {
         apply_section(s, "ensemble",
                       {{"radius", set(cfg.ensemble.radius)},
                        {"class_radius",
                         [&](const json& v) { cfg.ensemble.class_radius = class_map_from(v); }}});
       }},
      {"tracker",
       [&](const json& s) {
         apply_section(s, "tracker",
                       {{"iou_gate", set(cfg.tracker.iou_gate)},
                        {"max_inactive_frames", set(cfg.tracker.max_inactive_frames)},
                        {"measurement_var", set(cfg.tracker.kalman.measurement_var)},
                        {"process_var", set(cfg.tracker.kalman.process_var)},
                        {"initial_velocity_var", set(cfg.tracker.kalman.initial_velocity_var)}});
       }},
      {"match",
       [&](const json& s) {
         apply_section(
             s, "match",
             {{"assignment",
               [&](const json& v) { cfg.match.assignment = parse_assignment_mode(v.get<std::string>()); }},
              {"distance",
               [&](const json& v) { cfg.match.distance = parse_distance_mode(v.get<std::string>()); }},
              {"gate", set(cfg.match.gate)}});
       }},
      {"forecast",
       [&](const json& s) {
         apply_section(s, "forecast",
                       {{"k_modes", set(cfg.forecast.k_modes)},
                        {"fan_angles", set(cfg.forecast.fan_angles)},
                        {"forecaster",
                         [&](const json& v) { cfg.forecaster = parse_forecaster_kind(v.get<std::string>()); }},
                        {"post_process", set(cfg.post_process)}});
       }},
      {"metrics",
       [&](const json& s) {
         apply_section(s, "metrics",
                       {{"match_threshold_m", set(cfg.metrics.match_threshold_m)},
                        {"ap_recall_samples", set(cfg.metrics.ap_recall_samples)},
                        {"eval_range_m", set(cfg.metrics.eval_range_m)},
                        {"static_disp_m", set(cfg.metrics.static_disp_m)},
                        {"linear_tol_m", set(cfg.metrics.linear_tol_m)},
                        {"forecast_thresholds", set(cfg.metrics.forecast_thresholds)},
                        {"hota_alphas", set(cfg.metrics.hota_alphas)},
                        {"amota_recalls", set(cfg.metrics.amota_recalls)},
                        {"endpoint_any_mode", set(cfg.metrics.endpoint_any_mode)}});
       }},
      {"pipeline",
       [&](const json& s) {
         apply_section(s, "pipeline",
                       {{"use_ensemble", set(cfg.use_ensemble)},
                        {"interpolate", set(cfg.interpolate)},
                        {"inference_stride", set(cfg.inference_stride)},
                        {"num_scenes", set(cfg.num_scenes)}});
       }},
  };
  apply_section(doc, "config", sections);
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  apply_config_json(cfg, doc);
}

nlohmann::ordered_json config_to_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["time"] = {{"hz", cfg.sim.time.hz},
               {"past_window_s", cfg.sim.time.past_window_s},
               {"horizon_steps", cfg.sim.time.horizon_steps}};
  j["sim"] = {{"n_agents", cfg.sim.n_agents},
              {"fraction_static", cfg.sim.fraction_static},
              {"fraction_linear", cfg.sim.fraction_linear},
              {"fraction_turning", cfg.sim.fraction_turning},
              {"speed_min", cfg.sim.speed_min},
              {"speed_max", cfg.sim.speed_max},
              {"turn_radius_min", cfg.sim.turn_radius_min},
              {"turn_radius_max", cfg.sim.turn_radius_max},
              {"scene_len", cfg.sim.scene_len},
              {"map_extent", cfg.sim.map_extent},
              {"min_separation", cfg.sim.min_separation},
              {"class_mix", class_map_to(cfg.sim.class_mix)}};
  j["noise"] = {{"p_fn", cfg.noise.p_fn},           {"fp_rate", cfg.noise.fp_rate},
                {"sigma_xy", cfg.noise.sigma_xy},   {"sigma_z", cfg.noise.sigma_z},
                {"sigma_yaw", cfg.noise.sigma_yaw}, {"sigma_dims", cfg.noise.sigma_dims},
                {"s_lo_tp", cfg.noise.s_lo_tp},     {"s_hi_fp", cfg.noise.s_hi_fp},
                {"n_models", cfg.noise.n_models}};
  j["ensemble"] = {{"radius", cfg.ensemble.radius},
                   {"class_radius", class_map_to(cfg.ensemble.class_radius)}};
  j["tracker"] = {{"iou_gate", cfg.tracker.iou_gate},
                  {"max_inactive_frames", cfg.tracker.max_inactive_frames},
                  {"measurement_var", cfg.tracker.kalman.measurement_var},
                  {"process_var", cfg.tracker.kalman.process_var},
                  {"initial_velocity_var", cfg.tracker.kalman.initial_velocity_var}};
  j["match"] = {{"assignment", to_string(cfg.match.assignment)},
                {"distance", to_string(cfg.match.distance)},
                {"gate", cfg.match.gate}};
  j["forecast"] = {{"k_modes", cfg.forecast.k_modes},
                   {"fan_angles", cfg.forecast.fan_angles},
                   {"forecaster", to_string(cfg.forecaster)},
                   {"post_process", cfg.post_process}};
  j["metrics"] = {{"match_threshold_m", cfg.metrics.match_threshold_m},
                  {"ap_recall_samples", cfg.metrics.ap_recall_samples},
                  {"eval_range_m", cfg.metrics.eval_range_m},
                  {"static_disp_m", cfg.metrics.static_disp_m},
                  {"linear_tol_m", cfg.metrics.linear_tol_m},
                  {"forecast_thresholds", cfg.metrics.forecast_thresholds},
                  {"hota_alphas", cfg.metrics.hota_alphas},
                  {"amota_recalls", cfg.metrics.amota_recalls},
                  {"endpoint_any_mode", cfg.metrics.endpoint_any_mode}};
  j["pipeline"] = {{"use_ensemble", cfg.use_ensemble},
                   {"interpolate", cfg.interpolate},
                   {"inference_stride", cfg.inference_stride},
                   {"num_scenes", cfg.num_scenes}};
  return j;
}

}  // namespace modcast
