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

#ifndef ORIENT_SYNTH_H_
#define ORIENT_SYNTH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "orient/metrics.h"

namespace orient {

struct SceneConfig {
  int actors_per_frame = 20;
  int frames = 100;
  double static_fraction = 0.4;
  // Fraction of all actors that move backwards; drawn from the moving ones.
  double reversing_fraction = 0.1;
  double speed_min = 1.0;  // m/s, moving actors
  double speed_max = 10.0;
  double length_min = 3.8;
  double length_max = 5.2;
  double width_min = 1.7;
  double width_max = 2.1;
  int radial_bins = 8;
  int angular_bins = 8;
  // 0: front and rear look alike; 1: the rear returns nothing.
  double front_signal = 0.6;
  double feature_noise = 0.3;
  uint64_t seed = 0;
  int horizon = 30;

  int feature_dim() const { return radial_bins * angular_bins; }
  // Throws on invalid settings.
  void Validate() const;
};

struct SynthActor {
  GtActor gt;
  std::vector<double> features;
};

struct Dataset {
  std::vector<SynthActor> train;
  std::vector<SynthActor> val;
};

// Deterministic in `cfg.seed`. Frames are split 80/20 into train/val.
//
// Each actor's feature is a histogram of simulated lidar return counts in
// polar cells (radial x angular) centered on the actor and aligned with the
// world frame. Returns on the front half of the outline are kept with
// probability (1 + front_signal) / 2 and on the rear half with
// (1 - front_signal) / 2, faces turned away from the sensor are mostly
// occluded, and far actors get fewer returns. The newest three sweeps count
// positively and the three older ones negatively, so a moving actor leaves a
// trough behind it.
Dataset GenerateDataset(const SceneConfig& cfg);

struct PerturbConfig {
  double pos_sigma = 0.0;  // m
  double yaw_sigma = 0.0;  // rad
  double flip_fraction = 0.0;
  double fp_rate = 0.0;  // false positives per ground truth
  double fn_rate = 0.0;
  bool emit_flip_prob = false;
  uint64_t seed = 0;
};

// Noisy detections of `gts`. Exactly round(fn_rate * N) actors are dropped
// and round(flip_fraction * kept) are flipped by 180 degrees. Scores
// decrease with the size of the perturbation; false positives score lowest.
std::vector<DetectionRecord> PerturbDetections(std::span<const GtActor> gts,
                                               const PerturbConfig& cfg);

}  // namespace orient

#endif  // ORIENT_SYNTH_H_
