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
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "modcast/core.hpp"

namespace modcast {

enum class TrajectoryType : std::uint8_t { kStatic, kLinear, kNonLinear };

inline constexpr TrajectoryType kAllTrajectoryTypes[] = {
    TrajectoryType::kStatic, TrajectoryType::kLinear, TrajectoryType::kNonLinear};

std::string_view trajectory_type_name(TrajectoryType t);

struct MetricConfig {
  double match_threshold_m = 2.0;   ///< gating for ADE/FDE, MOTA and the HOTA similarity scale
  int ap_recall_samples = 101;
  std::vector<double> hota_alphas;  ///< 0.05, 0.10, ..., 0.95
  std::vector<double> amota_recalls;  ///< 1/40, 2/40, ..., 1
  double eval_range_m = 50.0;
  double static_disp_m = 1.0;
  double linear_tol_m = 2.0;
  std::vector<double> forecast_thresholds{0.5, 1.0, 2.0, 4.0};
  /// Endpoint test accepts any mode (true) or only the highest-scored one (false).
  bool endpoint_any_mode = true;

  MetricConfig();
};

void validate_metric_config(const MetricConfig& cfg);

/**
 * Static when the endpoint moves less than static_disp_m from `current`;
 * Linear when the endpoint is within linear_tol_m of the constant-velocity
 * extrapolation of `past_velocity` (meters per step); NonLinear otherwise.
 */
TrajectoryType classify_trajectory(Vec2 current, const FutureTrajectory& gt_future,
                                   Vec2 past_velocity, const MetricConfig& cfg);

struct DisplacementError {
  double ade = 0.0;
  double fde = 0.0;
  std::size_t mode = 0;  ///< index of the minimum-ADE mode
};

/// Errors of the minimum-ADE mode. Throws std::invalid_argument on horizon mismatch.
DisplacementError displacement_error(const ForecastSet& pred, const FutureTrajectory& gt_future);
double ade(const ForecastSet& pred, const FutureTrajectory& gt_future);
double fde(const ForecastSet& pred, const FutureTrajectory& gt_future);

/// One forecasted agent. `sample` scopes matching (one scene at one inference frame).
struct ForecastPrediction {
  int sample = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  double score = 0.0;  ///< detection confidence used for ranking
  Vec2 current;
  ForecastSet forecast;
};

struct ForecastGt {
  int sample = 0;
  std::int64_t id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  Vec2 current;
  FutureTrajectory future;
  TrajectoryType type = TrajectoryType::kStatic;
};

enum class ApLabel : std::uint8_t { kTruePositive, kFalsePositive, kIgnored };

/**
 * Labels the class-`agent_class` predictions, in descending score order, for
 * the (class, type) cell. A prediction claims the nearest unclaimed gt of its
 * class that matches at the current frame and at the final step; it is a TP
 * when that gt has type `traj_type`. Predictions that claim or lie near a gt of
 * another type are ignored. Anything else is a false positive.
 * Returns (prediction index, label) pairs in ranking order.
 */
std::vector<std::pair<std::size_t, ApLabel>> label_forecasts(
    std::span<const ForecastPrediction> preds, std::span<const ForecastGt> gts,
    AgentClass agent_class, TrajectoryType traj_type, double threshold, const MetricConfig& cfg);

/// Interpolated area under a precision/recall curve sampled at `recall_samples` points.
double interpolated_ap(std::span<const ApLabel> ranked_labels, std::size_t num_positives,
                       int recall_samples);

/// Forecasting AP for one cell; nullopt when the cell holds no ground truth.
std::optional<double> forecast_ap(std::span<const ForecastPrediction> preds,
                                  std::span<const ForecastGt> gts, AgentClass agent_class,
                                  TrajectoryType traj_type, double threshold,
                                  const MetricConfig& cfg);

struct MapfResult {
  std::optional<double> overall;
  std::map<TrajectoryType, std::optional<double>> per_type;
  std::map<AgentClass, std::optional<double>> per_class;
  int cells = 0;
};

/// Mean forecast_ap over (class present in gt) x (trajectory type) x threshold cells.
MapfResult mapf(std::span<const ForecastPrediction> preds, std::span<const ForecastGt> gts,
                const MetricConfig& cfg);

struct DisplacementSummary {
  std::optional<double> ade;
  std::optional<double> fde;
  std::map<TrajectoryType, std::optional<double>> ade_per_type;
  std::map<TrajectoryType, std::optional<double>> fde_per_type;
  int matched = 0;
};

/// ADE/FDE over gts detected at the current frame (greedy by score, same class, within gate).
DisplacementSummary displacement_summary(std::span<const ForecastPrediction> preds,
                                         std::span<const ForecastGt> gts,
                                         const MetricConfig& cfg);

/// A box in a tracking evaluation, reduced to what the metrics use.
struct EvalBox {
  int frame = 0;
  std::int64_t id = 0;
  AgentClass agent_class = AgentClass::kRegularVehicle;
  Vec2 xy;
  double score = 1.0;
};

struct HotaResult {
  double hota = 0.0;
  double deta = 0.0;
  double assa = 0.0;
};

/**
 * HOTA with a center-distance similarity s = 1 - d / match_threshold_m; at
 * level alpha a pair can be a TP iff d <= match_threshold_m * (1 - alpha).
 * Computed per class and averaged over the classes present in the ground
 * truth; nullopt when there is no ground truth at all.
 */
std::optional<HotaResult> hota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                               const MetricConfig& cfg);

struct ClearCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long ids = 0;
  long num_gt = 0;
};

/// CLEAR-MOT bookkeeping for one class with center-distance gating.
ClearCounts clear_counts(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                         double gate);

struct MotaResult {
  double mota = 0.0;      ///< clamped into [0, 1]
  double mota_raw = 0.0;  ///< 1 - (FP + FN + IDS) / GT, may be negative
  ClearCounts counts;     ///< summed over classes
};

/// Class-averaged MOTA; nullopt without ground truth.
std::optional<MotaResult> mota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                               const MetricConfig& cfg);

/// Class-averaged AMOTA: mean recall-normalized MOTA over cfg.amota_recalls.
std::optional<double> amota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                            const MetricConfig& cfg);

}  // namespace modcast
