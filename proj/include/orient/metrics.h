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

#ifndef ORIENT_METRICS_H_
#define ORIENT_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orient/geom.h"

namespace orient {

// Waypoint spacing of ground-truth and predicted trajectories.
inline constexpr double kWaypointDt = 0.1;
// An actor is moving when its speed is strictly above this (m/s).
inline constexpr double kMovingSpeedThreshold = 0.5;

struct DetectionRecord {
  int64_t frame = 0;
  int64_t id = 0;
  OrientedBox box;  // geometry used for IoU matching
  double score = 1.0;
  std::vector<double> yaw;  // reported orientation per step, radians
  std::optional<double> flip_prob;
  std::vector<Vec2> waypoints;  // absolute positions at k * 0.1 s, k = 1..H

  // Orientation scored by AOS and the error metrics: the first reported
  // step when present, otherwise the box yaw.
  double Orientation() const { return yaw.empty() ? box.yaw : yaw.front(); }
};

struct GtActor {
  int64_t frame = 0;
  int64_t id = 0;
  OrientedBox box;
  std::vector<double> yaw;  // per step, radians
  std::vector<Vec2> waypoints;

  double Speed() const;
  bool Moving() const { return Speed() > kMovingSpeedThreshold; }
};

// Speed from the displacement between the 0 s position and the 0.5 s
// waypoint. Tracks shorter than 0.5 s use their last waypoint.
double ActorSpeed(Vec2 start, std::span<const Vec2> waypoints,
                  double dt = kWaypointDt);

struct Match {
  size_t det = 0;
  size_t gt = 0;
  double iou = 0.0;
};

struct MatchSet {
  std::vector<Match> true_positives;
  std::vector<size_t> false_positives;
  std::vector<size_t> false_negatives;
  double score_threshold = 0.0;
};

// Greedy matching per frame: detections with score >= score_threshold are
// visited by descending score and take the unmatched ground truth of highest
// IoU, provided IoU >= iou_threshold.
MatchSet MatchDetections(std::span<const DetectionRecord> dets,
                         std::span<const GtActor> gts, double iou_threshold,
                         double score_threshold = -1e300);

struct PrPoint {
  double score = 0.0;  // threshold: detections with score >= this count
  double recall = 0.0;
  double precision = 0.0;
  // Mean of (1 + cos dtheta) / 2 over the true positives at this threshold.
  double similarity = 0.0;
};

// One point per distinct score, in descending score order. All frames are
// pooled into a single sweep.
std::vector<PrPoint> PrCurve(std::span<const DetectionRecord> dets,
                             std::span<const GtActor> gts,
                             double iou_threshold);

enum class ApInterpolation { kAllPoint, kRecall40 };

double AveragePrecision(std::span<const PrPoint> curve,
                        ApInterpolation interp = ApInterpolation::kAllPoint);
// Same integration with precision * similarity; never exceeds the AP.
double AverageOrientationSimilarity(
    std::span<const PrPoint> curve,
    ApInterpolation interp = ApInterpolation::kAllPoint);

struct OperatingPoint {
  double threshold = 0.0;
  double recall = 0.0;
  bool reached = false;  // false: target recall unreachable, all dets kept
};

// Highest score threshold whose recall reaches `target_recall`.
OperatingPoint FindOperatingPoint(std::span<const DetectionRecord> dets,
                                  std::span<const GtActor> gts,
                                  double target_recall = 0.8,
                                  double iou_threshold = 0.5);

// Means over true positives, degrees for angles and meters for l2. Empty
// slices are nullopt.
struct ErrorSlices {
  std::optional<double> hoe_all;
  std::optional<double> foe_all;
  std::optional<double> foe_moving;
  std::optional<double> l2_all;
  std::optional<double> l2_moving;
  int tp_all = 0;
  int tp_moving = 0;
};

// Index of the waypoint at 3 s (or the last one for shorter horizons).
size_t ThreeSecondIndex(size_t horizon);

ErrorSlices ComputeErrorMetrics(std::span<const DetectionRecord> dets,
                                std::span<const GtActor> gts,
                                const MatchSet& matches);

// Picks theta_half or theta_half + 180 deg, whichever agrees with the travel
// direction of the trajectory; short trajectories (<= 0.5 m) keep theta_half.
double TrajDirectionConvert(double half_yaw, std::span<const Vec2> waypoints);

struct FlipBin {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  double frac = 0.0;
  std::optional<double> mean_foe_deg;
  std::optional<double> mean_speed;
};

// Bins true positives by flip probability over [0, 0.5]. Detections without
// a flip probability are ignored.
std::vector<FlipBin> FlipProbBins(std::span<const DetectionRecord> dets,
                                  std::span<const GtActor> gts,
                                  const MatchSet& matches, int num_bins = 10);

struct EvalOptions {
  double ap_iou = 0.7;
  double operating_recall = 0.8;
  double operating_iou = 0.5;
  int flip_bins = 10;
  ApInterpolation interp = ApInterpolation::kAllPoint;
};

struct EvalReport {
  std::string name;
  std::string method;
  double ap = 0.0;
  double aos = 0.0;
  ErrorSlices errors;
  OperatingPoint operating_point;
  int num_detections = 0;
  int num_gts = 0;
  std::optional<double> mean_flip_prob;
  std::optional<std::vector<FlipBin>> flip_bins;  // absent without flip_prob
  std::vector<PrPoint> pr_curve;                  // at ap_iou
};

EvalReport Evaluate(std::span<const DetectionRecord> dets,
                    std::span<const GtActor> gts,
                    const EvalOptions& options = {});

}  // namespace orient

#endif  // ORIENT_METRICS_H_
