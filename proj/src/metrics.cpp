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

#include "modcast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "modcast/assignment.hpp"

namespace modcast {

std::string_view trajectory_type_name(TrajectoryType t) {
  switch (t) {
    case TrajectoryType::kStatic: return "static";
    case TrajectoryType::kLinear: return "linear";
    case TrajectoryType::kNonLinear: return "non_linear";
  }
  return "unknown";
}

MetricConfig::MetricConfig() {
  for (int i = 1; i <= 19; ++i) hota_alphas.push_back(0.05 * i);
  for (int i = 1; i <= 40; ++i) amota_recalls.push_back(i / 40.0);
}

void validate_metric_config(const MetricConfig& cfg) {
  if (!(cfg.match_threshold_m > 0.0) || !(cfg.eval_range_m > 0.0) ||
      !(cfg.static_disp_m > 0.0) || !(cfg.linear_tol_m > 0.0)) {
    throw std::invalid_argument("metric thresholds must be > 0");
  }
  if (cfg.ap_recall_samples < 2) throw std::invalid_argument("ap_recall_samples must be >= 2");
  if (cfg.forecast_thresholds.empty() || cfg.hota_alphas.empty() || cfg.amota_recalls.empty()) {
    throw std::invalid_argument("metric threshold lists must be non-empty");
  }
  for (double t : cfg.forecast_thresholds) {
    if (!(t > 0.0)) throw std::invalid_argument("forecast thresholds must be > 0");
  }
  for (double a : cfg.hota_alphas) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("hota alphas must lie in (0, 1)");
  }
  for (double r : cfg.amota_recalls) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("amota recalls must lie in (0, 1]");
  }
}

TrajectoryType classify_trajectory(Vec2 current, const FutureTrajectory& gt_future,
                                   Vec2 past_velocity, const MetricConfig& cfg) {
  if (gt_future.waypoints.empty()) throw std::invalid_argument("classify: empty future");
  const Vec2 end = gt_future.waypoints.back();
  if (norm(end - current) < cfg.static_disp_m) return TrajectoryType::kStatic;
  const double steps = static_cast<double>(gt_future.waypoints.size());
  const Vec2 extrapolated = current + steps * past_velocity;
  if (norm(end - extrapolated) <= cfg.linear_tol_m) return TrajectoryType::kLinear;
  return TrajectoryType::kNonLinear;
}

DisplacementError displacement_error(const ForecastSet& pred, const FutureTrajectory& gt_future) {
  if (pred.modes.empty()) throw std::invalid_argument("displacement_error: no modes");
  const std::size_t h = gt_future.waypoints.size();
  if (h == 0) throw std::invalid_argument("displacement_error: empty ground truth");
  DisplacementError best;
  bool have = false;
  for (std::size_t m = 0; m < pred.modes.size(); ++m) {
    const auto& wp = pred.modes[m].trajectory.waypoints;
    if (wp.size() != h) throw std::invalid_argument("displacement_error: horizon mismatch");
    double sum = 0.0;
    double last = 0.0;
    for (std::size_t k = 0; k < h; ++k) {
      last = norm(wp[k] - gt_future.waypoints[k]);
      sum += last;
    }
    const double mean = sum / static_cast<double>(h);
    if (!have || mean < best.ade) {
      best = {mean, last, m};
      have = true;
    }
  }
  return best;
}

double ade(const ForecastSet& pred, const FutureTrajectory& gt_future) {
  return displacement_error(pred, gt_future).ade;
}

double fde(const ForecastSet& pred, const FutureTrajectory& gt_future) {
  return displacement_error(pred, gt_future).fde;
}

namespace {

bool endpoint_matches(const ForecastSet& fs, Vec2 gt_end, double threshold, bool any_mode) {
  if (fs.modes.empty()) return false;
  if (!any_mode) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < fs.modes.size(); ++i) {
      if (fs.modes[i].score > fs.modes[top].score) top = i;
    }
    const auto& wp = fs.modes[top].trajectory.waypoints;
    return !wp.empty() && norm(wp.back() - gt_end) <= threshold;
  }
  return std::any_of(fs.modes.begin(), fs.modes.end(), [&](const ForecastMode& m) {
    return !m.trajectory.waypoints.empty() &&
           norm(m.trajectory.waypoints.back() - gt_end) <= threshold;
  });
}

std::vector<std::size_t> ranking(std::span<const ForecastPrediction> preds, AgentClass cls) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].agent_class == cls) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return preds[a].score > preds[b].score; });
  return order;
}

}  // namespace

std::vector<std::pair<std::size_t, ApLabel>> label_forecasts(
    std::span<const ForecastPrediction> preds, std::span<const ForecastGt> gts,
    AgentClass agent_class, TrajectoryType traj_type, double threshold, const MetricConfig& cfg) {
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < gts.size(); ++j) {
    if (gts[j].agent_class == agent_class) cand.push_back(j);
  }
  std::vector<char> claimed(gts.size(), 0);
  std::vector<std::pair<std::size_t, ApLabel>> out;

  for (std::size_t i : ranking(preds, agent_class)) {
    const ForecastPrediction& p = preds[i];
    std::optional<std::size_t> best;
    double best_d = 0.0;
    bool near_other_type = false;
    for (std::size_t j : cand) {
      const ForecastGt& g = gts[j];
      if (g.sample != p.sample) continue;
      const double d = norm(p.current - g.current);
      if (d > threshold) continue;
      if (g.type != traj_type) near_other_type = true;
      if (claimed[j] || g.future.waypoints.empty()) continue;
      if (!endpoint_matches(p.forecast, g.future.waypoints.back(), threshold,
                            cfg.endpoint_any_mode)) {
        continue;
      }
      if (!best || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best) {
      claimed[*best] = 1;
      out.emplace_back(i, gts[*best].type == traj_type ? ApLabel::kTruePositive
                                                       : ApLabel::kIgnored);
    } else {
      out.emplace_back(i, near_other_type ? ApLabel::kIgnored : ApLabel::kFalsePositive);
    }
  }
  return out;
}

double interpolated_ap(std::span<const ApLabel> ranked_labels, std::size_t num_positives,
                       int recall_samples) {
  if (num_positives == 0) return 0.0;
  std::vector<double> recall;
  std::vector<double> precision;
  long tp = 0;
  long fp = 0;
  for (ApLabel l : ranked_labels) {
    if (l == ApLabel::kIgnored) continue;
    (l == ApLabel::kTruePositive ? tp : fp) += 1;
    recall.push_back(static_cast<double>(tp) / static_cast<double>(num_positives));
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
  }
  // Precision envelope: best precision at any recall at or beyond this point.
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double acc = 0.0;
  std::size_t pos = 0;
  for (int k = 0; k < recall_samples; ++k) {
    const double r = static_cast<double>(k) / static_cast<double>(recall_samples - 1);
    while (pos < recall.size() && recall[pos] < r) ++pos;
    if (pos == recall.size()) break;
    acc += precision[pos];
  }
  return acc / static_cast<double>(recall_samples);
}

std::optional<double> forecast_ap(std::span<const ForecastPrediction> preds,
                                  std::span<const ForecastGt> gts, AgentClass agent_class,
                                  TrajectoryType traj_type, double threshold,
                                  const MetricConfig& cfg) {
  const auto npos = static_cast<std::size_t>(std::count_if(gts.begin(), gts.end(), [&](const auto& g) {
    return g.agent_class == agent_class && g.type == traj_type;
  }));
  if (npos == 0) return std::nullopt;
  std::vector<ApLabel> labels;
  for (const auto& [idx, label] : label_forecasts(preds, gts, agent_class, traj_type, threshold, cfg)) {
    labels.push_back(label);
  }
  return interpolated_ap(labels, npos, cfg.ap_recall_samples);
}

namespace {

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

MapfResult mapf(std::span<const ForecastPrediction> preds, std::span<const ForecastGt> gts,
                const MetricConfig& cfg) {
  validate_metric_config(cfg);
  std::set<AgentClass> classes;
  for (const auto& g : gts) classes.insert(g.agent_class);

  std::vector<double> all;
  std::map<TrajectoryType, std::vector<double>> by_type;
  std::map<AgentClass, std::vector<double>> by_class;
  for (AgentClass c : classes) {
    for (TrajectoryType t : kAllTrajectoryTypes) {
      for (double thr : cfg.forecast_thresholds) {
        const auto ap = forecast_ap(preds, gts, c, t, thr, cfg);
        if (!ap) continue;
        all.push_back(*ap);
        by_type[t].push_back(*ap);
        by_class[c].push_back(*ap);
      }
    }
  }
  MapfResult r;
  r.overall = mean_of(all);
  r.cells = static_cast<int>(all.size());
  for (TrajectoryType t : kAllTrajectoryTypes) r.per_type[t] = mean_of(by_type[t]);
  for (AgentClass c : classes) r.per_class[c] = mean_of(by_class[c]);
  return r;
}

DisplacementSummary displacement_summary(std::span<const ForecastPrediction> preds,
                                         std::span<const ForecastGt> gts,
                                         const MetricConfig& cfg) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return preds[a].score > preds[b].score; });
  std::vector<char> claimed(gts.size(), 0);
  std::vector<double> ades, fdes;
  std::map<TrajectoryType, std::vector<double>> ade_t, fde_t;
  for (std::size_t i : order) {
    const auto& p = preds[i];
    std::optional<std::size_t> best;
    double best_d = 0.0;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      const auto& g = gts[j];
      if (claimed[j] || g.sample != p.sample || g.agent_class != p.agent_class) continue;
      const double d = norm(p.current - g.current);
      if (d <= cfg.match_threshold_m && (!best || d < best_d)) {
        best = j;
        best_d = d;
      }
    }
    if (!best) continue;
    claimed[*best] = 1;
    const auto err = displacement_error(p.forecast, gts[*best].future);
    ades.push_back(err.ade);
    fdes.push_back(err.fde);
    ade_t[gts[*best].type].push_back(err.ade);
    fde_t[gts[*best].type].push_back(err.fde);
  }
  DisplacementSummary s;
  s.ade = mean_of(ades);
  s.fde = mean_of(fdes);
  s.matched = static_cast<int>(ades.size());
  for (TrajectoryType t : kAllTrajectoryTypes) {
    s.ade_per_type[t] = mean_of(ade_t[t]);
    s.fde_per_type[t] = mean_of(fde_t[t]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Tracking metrics

namespace {

struct FrameBoxes {
  std::vector<const EvalBox*> gts;
  std::vector<const EvalBox*> tracks;
};

std::map<int, FrameBoxes> by_frame(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                                   AgentClass cls, double min_score = -1.0) {
  std::map<int, FrameBoxes> frames;
  for (const auto& g : gts) {
    if (g.agent_class == cls) frames[g.frame].gts.push_back(&g);
  }
  for (const auto& t : tracks) {
    if (t.agent_class == cls && t.score >= min_score) frames[t.frame].tracks.push_back(&t);
  }
  return frames;
}

std::set<AgentClass> gt_classes(std::span<const EvalBox> gts) {
  std::set<AgentClass> out;
  for (const auto& g : gts) out.insert(g.agent_class);
  return out;
}

CostMatrix distance_costs(const std::vector<const EvalBox*>& gts,
                          const std::vector<const EvalBox*>& tracks, double max_dist) {
  CostMatrix cost(gts.size(), tracks.size());
  for (std::size_t i = 0; i < gts.size(); ++i) {
    for (std::size_t j = 0; j < tracks.size(); ++j) {
      const double d = norm(gts[i]->xy - tracks[j]->xy);
      if (d <= max_dist) cost(i, j) = d;
    }
  }
  return cost;
}

HotaResult hota_single_class(const std::map<int, FrameBoxes>& frames, const MetricConfig& cfg) {
  std::map<std::int64_t, long> gt_count;
  std::map<std::int64_t, long> trk_count;
  for (const auto& [f, fb] : frames) {
    for (const auto* g : fb.gts) ++gt_count[g->id];
    for (const auto* t : fb.tracks) ++trk_count[t->id];
  }

  HotaResult acc;
  for (double alpha : cfg.hota_alphas) {
    const double max_dist = cfg.match_threshold_m * (1.0 - alpha);
    long tp = 0, fn = 0, fp = 0;
    std::map<std::pair<std::int64_t, std::int64_t>, long> pair_count;
    for (const auto& [f, fb] : frames) {
      const Assignment a = solve_assignment(distance_costs(fb.gts, fb.tracks, max_dist));
      const long m = static_cast<long>(a.pairs.size());
      tp += m;
      fn += static_cast<long>(fb.gts.size()) - m;
      fp += static_cast<long>(fb.tracks.size()) - m;
      for (const auto& [gi, ti] : a.pairs) ++pair_count[{fb.gts[gi]->id, fb.tracks[ti]->id}];
    }
    double deta = 0.0;
    double assa = 0.0;
    if (tp > 0) {
      deta = static_cast<double>(tp) / static_cast<double>(tp + fn + fp);
      double sum = 0.0;
      for (const auto& [key, c] : pair_count) {
        const double denom = static_cast<double>(gt_count[key.first] + trk_count[key.second] - c);
        sum += static_cast<double>(c) * (static_cast<double>(c) / denom);
      }
      assa = sum / static_cast<double>(tp);
    }
    acc.deta += deta;
    acc.assa += assa;
    acc.hota += std::sqrt(deta * assa);
  }
  const double n = static_cast<double>(cfg.hota_alphas.size());
  acc.deta /= n;
  acc.assa /= n;
  acc.hota /= n;
  return acc;
}

ClearCounts clear_on_frames(const std::map<int, FrameBoxes>& frames, double gate,
                            std::vector<double>* tp_scores) {
  ClearCounts c;
  std::map<std::int64_t, std::int64_t> last_match;  // gt id -> track id
  for (const auto& [f, fb] : frames) {
    c.num_gt += static_cast<long>(fb.gts.size());
    std::vector<int> gt_to_trk(fb.gts.size(), -1);
    std::vector<char> trk_used(fb.tracks.size(), 0);

    // Keep last frame's correspondences that are still valid.
    for (std::size_t i = 0; i < fb.gts.size(); ++i) {
      const auto it = last_match.find(fb.gts[i]->id);
      if (it == last_match.end()) continue;
      for (std::size_t j = 0; j < fb.tracks.size(); ++j) {
        if (trk_used[j] || fb.tracks[j]->id != it->second) continue;
        if (norm(fb.gts[i]->xy - fb.tracks[j]->xy) <= gate) {
          gt_to_trk[i] = static_cast<int>(j);
          trk_used[j] = 1;
        }
        break;
      }
    }

    std::vector<std::size_t> free_g, free_t;
    for (std::size_t i = 0; i < fb.gts.size(); ++i) {
      if (gt_to_trk[i] < 0) free_g.push_back(i);
    }
    for (std::size_t j = 0; j < fb.tracks.size(); ++j) {
      if (!trk_used[j]) free_t.push_back(j);
    }
    CostMatrix cost(free_g.size(), free_t.size());
    for (std::size_t a = 0; a < free_g.size(); ++a) {
      for (std::size_t b = 0; b < free_t.size(); ++b) {
        const double d = norm(fb.gts[free_g[a]]->xy - fb.tracks[free_t[b]]->xy);
        if (d <= gate) cost(a, b) = d;
      }
    }
    for (const auto& [a, b] : solve_assignment(cost).pairs) {
      gt_to_trk[free_g[a]] = static_cast<int>(free_t[b]);
      trk_used[free_t[b]] = 1;
    }

    for (std::size_t i = 0; i < fb.gts.size(); ++i) {
      if (gt_to_trk[i] < 0) {
        ++c.fn;
        continue;
      }
      const EvalBox* t = fb.tracks[static_cast<std::size_t>(gt_to_trk[i])];
      ++c.tp;
      if (tp_scores != nullptr) tp_scores->push_back(t->score);
      const auto it = last_match.find(fb.gts[i]->id);
      if (it != last_match.end() && it->second != t->id) ++c.ids;
      last_match[fb.gts[i]->id] = t->id;
    }
    for (std::size_t j = 0; j < fb.tracks.size(); ++j) {
      if (!trk_used[j]) ++c.fp;
    }
  }
  return c;
}

}  // namespace

std::optional<HotaResult> hota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                               const MetricConfig& cfg) {
  validate_metric_config(cfg);
  const auto classes = gt_classes(gts);
  if (classes.empty()) return std::nullopt;
  HotaResult mean;
  for (AgentClass c : classes) {
    const HotaResult r = hota_single_class(by_frame(tracks, gts, c), cfg);
    mean.hota += r.hota;
    mean.deta += r.deta;
    mean.assa += r.assa;
  }
  const double n = static_cast<double>(classes.size());
  mean.hota /= n;
  mean.deta /= n;
  mean.assa /= n;
  return mean;
}

ClearCounts clear_counts(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                         double gate) {
  ClearCounts total;
  std::set<AgentClass> classes = gt_classes(gts);
  for (const auto& t : tracks) classes.insert(t.agent_class);
  for (AgentClass c : classes) {
    const ClearCounts k = clear_on_frames(by_frame(tracks, gts, c), gate, nullptr);
    total.tp += k.tp;
    total.fp += k.fp;
    total.fn += k.fn;
    total.ids += k.ids;
    total.num_gt += k.num_gt;
  }
  return total;
}

std::optional<MotaResult> mota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                               const MetricConfig& cfg) {
  const auto classes = gt_classes(gts);
  if (classes.empty()) return std::nullopt;
  MotaResult r;
  for (AgentClass c : classes) {
    const ClearCounts k = clear_on_frames(by_frame(tracks, gts, c), cfg.match_threshold_m, nullptr);
    const double raw =
        1.0 - static_cast<double>(k.fp + k.fn + k.ids) / static_cast<double>(k.num_gt);
    r.mota_raw += raw;
    r.mota += std::clamp(raw, 0.0, 1.0);
    r.counts.tp += k.tp;
    r.counts.fp += k.fp;
    r.counts.fn += k.fn;
    r.counts.ids += k.ids;
    r.counts.num_gt += k.num_gt;
  }
  const double n = static_cast<double>(classes.size());
  r.mota /= n;
  r.mota_raw /= n;
  // False positives of classes absent from the ground truth are reported, not scored.
  for (const auto& t : tracks) {
    if (!classes.contains(t.agent_class)) ++r.counts.fp;
  }
  return r;
}

std::optional<double> amota(std::span<const EvalBox> tracks, std::span<const EvalBox> gts,
                            const MetricConfig& cfg) {
  validate_metric_config(cfg);
  const auto classes = gt_classes(gts);
  if (classes.empty()) return std::nullopt;
  double total = 0.0;
  for (AgentClass c : classes) {
    std::vector<double> tp_scores;
    const ClearCounts all = clear_on_frames(by_frame(tracks, gts, c), cfg.match_threshold_m,
                                            &tp_scores);
    std::sort(tp_scores.begin(), tp_scores.end(), std::greater<>());
    const double p = static_cast<double>(all.num_gt);
    double sum = 0.0;
    for (double r : cfg.amota_recalls) {
      const auto needed = static_cast<std::size_t>(std::max(1.0, std::ceil(r * p - 1e-9)));
      if (needed > tp_scores.size()) continue;  // recall unreachable: contributes 0
      const double thr = tp_scores[needed - 1];
      const ClearCounts k =
          clear_on_frames(by_frame(tracks, gts, c, thr), cfg.match_threshold_m, nullptr);
      const double motar =
          1.0 - (static_cast<double>(k.ids + k.fp + k.fn) - (1.0 - r) * p) / (r * p);
      sum += std::clamp(motar, 0.0, 1.0);
    }
    total += sum / static_cast<double>(cfg.amota_recalls.size());
  }
  return total / static_cast<double>(classes.size());
}

}  // namespace modcast
