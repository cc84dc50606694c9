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

#ifndef ORIENT_TRAIN_H_
#define ORIENT_TRAIN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orient/geom.h"
#include "orient/losses.h"
#include "orient/metrics.h"
#include "orient/synth.h"

namespace orient {

// Predicted waypoint offsets are regressed in units of this many meters.
inline constexpr double kWaypointUnit = 10.0;

struct TrainConfig {
  Method method = Method::FlipAware();
  int epochs = 30;
  int batch_size = 64;
  double learning_rate = 0.01;
  double momentum = 0.9;
  uint64_t seed = 0;
  bool no_half = false;
  bool no_flip = false;
  int horizon = 30;
  int hidden = 128;
  double beta = kDefaultSmoothL1Beta;
  double waypoint_weight = 1.0;
  // When the batch gradient's global L2 norm exceeds this, that step's
  // learning rate is scaled by grad_clip / norm. 0 disables the cap.
  double grad_clip = 10.0;

  LossOptions loss_options() const { return {beta, no_half, no_flip}; }
  // Name used in reports, e.g. "flip_aware-no_half".
  std::string RunName() const;
  void Validate() const;
};

// One-hidden-layer rectifier network with an orientation head and a
// waypoint-offset head.
struct ModelParams {
  Method method;
  LossOptions loss;
  int horizon = 0;
  int input_dim = 0;
  int hidden = 0;
  // Inputs are standardized as (x - input_mean) .* input_scale.
  Eigen::VectorXd input_mean;
  Eigen::VectorXd input_scale;
  Eigen::MatrixXd w1;  // hidden x input
  Eigen::VectorXd b1;
  Eigen::MatrixXd w_head;  // HeadSize(horizon) x hidden
  Eigen::VectorXd b_head;
  Eigen::MatrixXd w_traj;  // 2 * horizon x hidden
  Eigen::VectorXd b_traj;

  int head_size() const { return method.HeadSize(horizon); }
};

// Uniform(+-1/sqrt(fan_in)) weights and zero biases, deterministic in
// cfg.seed. Inputs pass through unscaled.
ModelParams InitModel(const TrainConfig& cfg, int input_dim);

// As above, with input standardization fitted to the training features.
ModelParams InitModel(const TrainConfig& cfg, std::span<const SynthActor> train);

struct ModelOutput {
  HeadOutput head;
  std::vector<Vec2> waypoint_offsets;  // meters, relative to the box center
};

ModelOutput Forward(const ModelParams& params, std::span<const double> features);

// Column j of `features` is item j.
std::vector<ModelOutput> ForwardBatch(const ModelParams& params,
                                      const Eigen::MatrixXd& features);

struct BatchLoss {
  double mean_loss = 0.0;
  ModelParams gradient;  // same shapes as the parameters
};

// Mean loss over the items and its exact gradient w.r.t. all parameters.
BatchLoss ComputeBatchLoss(const ModelParams& params,
                           std::span<const SynthActor* const> items,
                           double waypoint_weight);

struct TrainResult {
  ModelParams params;
  std::vector<double> loss_history;  // mean training loss per epoch
};

// Minibatch SGD with momentum. Throws Error(kDiverged) on a non-finite loss.
TrainResult Train(const TrainConfig& cfg, std::span<const SynthActor> train);

using GradientFn = std::function<HeadGradient(
    const HeadOutput&, std::span<const double>, const LossOptions&)>;

struct GradCheckReport {
  std::string method;
  int trials = 0;
  int skipped = 0;  // draws rejected for lying near a kink or min switch
  double max_rel_error = 0.0;
  bool passed = false;
};

// Compares analytic head gradients with central differences (eps = 1e-5)
// at random heads and ground truths. Points within 1e-3 of a smooth-L1 kink
// or of L_full == L_flipped are redrawn. `gradient` defaults to the analytic
// gradient of the losses module.
GradCheckReport GradCheck(const Method& method, int trials, double tolerance,
                          uint64_t seed = 0, const LossOptions& options = {},
                          const GradientFn& gradient = nullptr);

// Runs the model on `actors` and turns the outputs into detections: the gt
// box (so matching is exact) with the predicted orientation in `yaw`, score
// 1. Flip-aware outputs are post-processed; half-range outputs are resolved
// with the predicted trajectory direction.
std::vector<DetectionRecord> PredictDetections(const ModelParams& params,
                                               std::span<const SynthActor> actors);

EvalReport EvaluateModel(const ModelParams& params,
                         std::span<const SynthActor> actors,
                         const EvalOptions& options = {});

}  // namespace orient

#endif  // ORIENT_TRAIN_H_
