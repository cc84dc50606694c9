// Copyright 2026 The orient-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "orient/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "orient/error.h"

namespace orient {
namespace {

double Similarity(double gt_yaw, double det_yaw) {
  return 0.5 * (1.0 + std::cos(gt_yaw - det_yaw));
}

std::vector<size_t> ByDescendingScore(std::span<const DetectionRecord> dets) {
  std::vector<size_t> order(dets.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return dets[a].score > dets[b].score;
  });
  return order;
}

// Running mean that stays nullopt until a value arrives.
class Mean {
 public:
  void Add(double v) {
    sum_ += v;
    ++n_;
  }
  std::optional<double> Get() const {
    if (n_ == 0) return std::nullopt;
    return sum_ / n_;
  }
  int count() const { return n_; }

 private:
  double sum_ = 0.0;
  int n_ = 0;
};

double Interpolated(std::span<const PrPoint> curve, ApInterpolation interp,
                    bool weight_by_similarity) {
  if (curve.empty()) return 0.0;
  std::vector<double> value(curve.size());
  for (size_t i = 0; i < curve.size(); ++i) {
    value[i] = curve[i].precision *
               (weight_by_similarity ? curve[i].similarity : 1.0);
  }
  // Max to the right.
  for (size_t i = curve.size() - 1; i-- > 0;) {
    value[i] = std::max(value[i], value[i + 1]);
  }
  if (interp == ApInterpolation::kAllPoint) {
    double area = 0.0;
    double prev_recall = 0.0;
    for (size_t i = 0; i < curve.size(); ++i) {
      area += (curve[i].recall - prev_recall) * value[i];
      prev_recall = curve[i].recall;
    }
    return area;
  }
  constexpr int kSamples = 40;
  double sum = 0.0;
  size_t cursor = 0;
  for (int k = 1; k <= kSamples; ++k) {
    const double r = static_cast<double>(k) / kSamples;
    while (cursor < curve.size() && curve[cursor].recall < r - 1e-12) ++cursor;
    if (cursor == curve.size()) break;
    sum += value[cursor];
  }
  return sum / kSamples;
}

}  // namespace

double GtActor::Speed() const { return ActorSpeed({box.cx, box.cy}, waypoints); }

double ActorSpeed(Vec2 start, std::span<const Vec2> waypoints, double dt) {
  if (waypoints.empty()) return 0.0;
  const size_t half_second =
      static_cast<size_t>(std::lround(0.5 / dt)) - 1;
  const size_t idx = std::min(half_second, waypoints.size() - 1);
  const double elapsed = static_cast<double>(idx + 1) * dt;
  return Norm(waypoints[idx] - start) / elapsed;
}

MatchSet MatchDetections(std::span<const DetectionRecord> dets,
                         std::span<const GtActor> gts, double iou_threshold,
                         double score_threshold) {
  MatchSet out;
  out.score_threshold = score_threshold;
  std::map<int64_t, std::vector<size_t>> gts_by_frame;
  for (size_t g = 0; g < gts.size(); ++g) {
    gts_by_frame[gts[g].frame].push_back(g);
  }
  std::vector<bool> gt_used(gts.size(), false);
  for (size_t d : ByDescendingScore(dets)) {
    if (dets[d].score < score_threshold) continue;
    const auto it = gts_by_frame.find(dets[d].frame);
    size_t best = gts.size();
    double best_iou = -1.0;
    if (it != gts_by_frame.end()) {
      for (size_t g : it->second) {
        if (gt_used[g]) continue;
        const double iou = RotatedIou(dets[d].box, gts[g].box);
        if (iou >= iou_threshold && iou > best_iou) {
          best_iou = iou;
          best = g;
        }
      }
    }
    if (best < gts.size()) {
      gt_used[best] = true;
      out.true_positives.push_back({d, best, best_iou});
    } else {
      out.false_positives.push_back(d);
    }
  }
  for (size_t g = 0; g < gts.size(); ++g) {
    if (!gt_used[g]) out.false_negatives.push_back(g);
  }
  return out;
}

std::vector<PrPoint> PrCurve(std::span<const DetectionRecord> dets,
                             std::span<const GtActor> gts,
                             double iou_threshold) {
  const MatchSet matches = MatchDetections(dets, gts, iou_threshold);
  std::vector<double> similarity(dets.size(), -1.0);  // -1: false positive
  for (const Match& m : matches.true_positives) {
    similarity[m.det] = Similarity(gts[m.gt].box.yaw, dets[m.det].Orientation());
  }
  const std::vector<size_t> order = ByDescendingScore(dets);
  std::vector<PrPoint> curve;
  double tp = 0.0;
  double fp = 0.0;
  double sim_sum = 0.0;
  const double num_gts = static_cast<double>(gts.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const size_t d = order[i];
    if (similarity[d] >= 0.0) {
      tp += 1.0;
      sim_sum += similarity[d];
    } else {
      fp += 1.0;
    }
    const bool last_of_score =
        i + 1 == order.size() || dets[order[i + 1]].score != dets[d].score;
    if (!last_of_score) continue;
    PrPoint p;
    p.score = dets[d].score;
    p.recall = num_gts > 0 ? tp / num_gts : 0.0;
    p.precision = tp / (tp + fp);
    p.similarity = tp > 0 ? sim_sum / tp : 0.0;
    curve.push_back(p);
  }
  return curve;
}

double AveragePrecision(std::span<const PrPoint> curve,
                        ApInterpolation interp) {
  return Interpolated(curve, interp, false);
}

double AverageOrientationSimilarity(std::span<const PrPoint> curve,
                                    ApInterpolation interp) {
  return Interpolated(curve, interp, true);
}

OperatingPoint FindOperatingPoint(std::span<const DetectionRecord> dets,
                                  std::span<const GtActor> gts,
                                  double target_recall, double iou_threshold) {
  const std::vector<PrPoint> curve = PrCurve(dets, gts, iou_threshold);
  OperatingPoint op;
  op.threshold = -std::numeric_limits<double>::infinity();
  for (const PrPoint& p : curve) {
    if (p.recall >= target_recall) {
      op.threshold = p.score;
      op.recall = p.recall;
      op.reached = true;
      return op;
    }
  }
  if (!curve.empty()) {
    op.threshold = curve.back().score;
    op.recall = curve.back().recall;
  }
  return op;
}

size_t ThreeSecondIndex(size_t horizon) {
  const size_t idx = static_cast<size_t>(std::lround(3.0 / kWaypointDt)) - 1;
  return horizon == 0 ? 0 : std::min(idx, horizon - 1);
}

ErrorSlices ComputeErrorMetrics(std::span<const DetectionRecord> dets,
                                std::span<const GtActor> gts,
                                const MatchSet& matches) {
  Mean hoe, foe, foe_moving, l2, l2_moving;
  int tp_moving = 0;
  for (const Match& m : matches.true_positives) {
    const DetectionRecord& det = dets[m.det];
    const GtActor& gt = gts[m.gt];
    const bool moving = gt.Moving();
    if (moving) ++tp_moving;
    hoe.Add(RadToDeg(HalfRangeError(gt.box.yaw, det.Orientation())));
    const double f = RadToDeg(FullRangeError(gt.box.yaw, det.Orientation()));
    foe.Add(f);
    if (moving) foe_moving.Add(f);
    const size_t h = std::min(det.waypoints.size(), gt.waypoints.size());
    if (h > 0) {
      const size_t k = ThreeSecondIndex(h);
      const double e = Norm(det.waypoints[k] - gt.waypoints[k]);
      l2.Add(e);
      if (moving) l2_moving.Add(e);
    }
  }
  ErrorSlices out;
  out.hoe_all = hoe.Get();
  out.foe_all = foe.Get();
  out.foe_moving = foe_moving.Get();
  out.l2_all = l2.Get();
  out.l2_moving = l2_moving.Get();
  out.tp_all = static_cast<int>(matches.true_positives.size());
  out.tp_moving = tp_moving;
  return out;
}

double TrajDirectionConvert(double half_yaw, std::span<const Vec2> waypoints) {
  if (waypoints.size() < 2) return half_yaw;
  const Vec2 d = waypoints.back() - waypoints.front();
  if (Norm(d) <= 0.5) return half_yaw;
  const double heading = std::atan2(d.y, d.x);
  const double flipped = WrapFull(half_yaw + kPi);
  return std::cos(half_yaw - heading) >= std::cos(flipped - heading)
             ? WrapFull(half_yaw)
             : flipped;
}

std::vector<FlipBin> FlipProbBins(std::span<const DetectionRecord> dets,
                                  std::span<const GtActor> gts,
                                  const MatchSet& matches, int num_bins) {
  if (num_bins < 1) ThrowInvalid("flip_bins must be >= 1");
  std::vector<Mean> foe(num_bins), speed(num_bins);
  int total = 0;
  for (const Match& m : matches.true_positives) {
    const DetectionRecord& det = dets[m.det];
    if (!det.flip_prob) continue;
    const double p = *det.flip_prob;
    const int bin =
        std::clamp(static_cast<int>(std::floor(p / 0.5 * num_bins)), 0,
                   num_bins - 1);
    foe[bin].Add(RadToDeg(FullRangeError(gts[m.gt].box.yaw, det.Orientation())));
    speed[bin].Add(gts[m.gt].Speed());
    ++total;
  }
  std::vector<FlipBin> bins(num_bins);
  for (int b = 0; b < num_bins; ++b) {
    bins[b].lo = 0.5 * b / num_bins;
    bins[b].hi = 0.5 * (b + 1) / num_bins;
    bins[b].count = foe[b].count();
    bins[b].frac = total > 0 ? static_cast<double>(bins[b].count) / total : 0.0;
    bins[b].mean_foe_deg = foe[b].Get();
    bins[b].mean_speed = speed[b].Get();
  }
  return bins;
}

EvalReport Evaluate(std::span<const DetectionRecord> dets,
                    std::span<const GtActor> gts, const EvalOptions& options) {
  bool any_flip = false;
  for (const DetectionRecord& d : dets) {
    if (!std::isfinite(d.score)) ThrowInvalid("detection score not finite");
    if (d.flip_prob) {
      any_flip = true;
      if (!(*d.flip_prob >= 0.0 && *d.flip_prob <= 0.5)) {
        ThrowInvalid("flip_prob must lie in [0, 0.5]");
      }
    }
  }
  EvalReport report;
  report.num_detections = static_cast<int>(dets.size());
  report.num_gts = static_cast<int>(gts.size());
  report.pr_curve = PrCurve(dets, gts, options.ap_iou);
  report.ap = AveragePrecision(report.pr_curve, options.interp);
  report.aos = AverageOrientationSimilarity(report.pr_curve, options.interp);
  report.operating_point = FindOperatingPoint(
      dets, gts, options.operating_recall, options.operating_iou);
  const MatchSet matches =
      MatchDetections(dets, gts, options.operating_iou,
                      report.operating_point.threshold);
  report.errors = ComputeErrorMetrics(dets, gts, matches);
  if (any_flip) {
    Mean flip;
    for (const Match& m : matches.true_positives) {
      if (dets[m.det].flip_prob) flip.Add(*dets[m.det].flip_prob);
    }
    report.mean_flip_prob = flip.Get();
    report.flip_bins = FlipProbBins(dets, gts, matches, options.flip_bins);
  }
  return report;
}

}  // namespace orient
