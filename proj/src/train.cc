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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "orient/error.h"
#include "orient/train.h"

namespace orient {
namespace {

// Classic momentum: v <- mu * v + g; w <- w - lr * v.
template <typename T>
void Step(T& weight, T& velocity, const T& grad, double lr, double mu) {
  velocity = mu * velocity + grad;
  weight -= lr * velocity;
}

ModelParams ZerosLike(const ModelParams& p) {
  ModelParams z = p;
  z.w1.setZero();
  z.b1.setZero();
  z.w_head.setZero();
  z.b_head.setZero();
  z.w_traj.setZero();
  z.b_traj.setZero();
  return z;
}

double GradientNorm(const ModelParams& g) {
  return std::sqrt(g.w1.squaredNorm() + g.b1.squaredNorm() +
                   g.w_head.squaredNorm() + g.b_head.squaredNorm() +
                   g.w_traj.squaredNorm() + g.b_traj.squaredNorm());
}

}  // namespace

std::string TrainConfig::RunName() const {
  std::string name = method.Name();
  if (no_half) name += "-no_half";
  if (no_flip) name += "-no_flip";
  return name;
}

void TrainConfig::Validate() const {
  if ((no_half || no_flip) && method.kind != MethodKind::kFlipAware) {
    ThrowInvalid("no_half/no_flip are valid only for flip_aware");
  }
  if (no_half && no_flip) ThrowInvalid("no_half and no_flip are exclusive");
  if (epochs < 0) ThrowInvalid("epochs must be >= 0");
  if (batch_size < 1) ThrowInvalid("batch_size must be >= 1");
  if (hidden < 1) ThrowInvalid("hidden width must be >= 1");
  if (horizon < 1) ThrowInvalid("horizon must be >= 1");
  if (!(learning_rate > 0.0)) ThrowInvalid("learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    ThrowInvalid("momentum must lie in [0, 1)");
  }
  if (!(beta > 0.0)) ThrowInvalid("beta must be > 0");
  if (!(waypoint_weight >= 0.0)) ThrowInvalid("waypoint_weight must be >= 0");
  if (!(grad_clip >= 0.0)) ThrowInvalid("grad_clip must be >= 0");
}

TrainResult Train(const TrainConfig& cfg, std::span<const SynthActor> train) {
  cfg.Validate();
  if (train.empty()) ThrowInvalid("training set is empty");
  TrainResult result;
  result.params = InitModel(cfg, train);
  ModelParams& p = result.params;
  ModelParams velocity = ZerosLike(p);

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::mt19937_64 rng(cfg.seed ^ 0x5deece66dULL);
  std::vector<const SynthActor*> batch;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (size_t i = start; i < end; ++i) batch.push_back(&train[order[i]]);
      const BatchLoss bl = ComputeBatchLoss(p, batch, cfg.waypoint_weight);
      if (!std::isfinite(bl.mean_loss)) {
        std::ostringstream msg;
        msg << "training diverged: non-finite loss at epoch " << epoch + 1
            << ", batch starting at " << start << " (learning_rate "
            << cfg.learning_rate << ")";
        throw Error(ErrorCode::kDiverged, msg.str());
      }
      epoch_loss += bl.mean_loss * static_cast<double>(end - start);
      double lr = cfg.learning_rate;
      if (cfg.grad_clip > 0.0) {
        const double norm = GradientNorm(bl.gradient);
        if (norm > cfg.grad_clip) lr *= cfg.grad_clip / norm;
      }
      const double mu = cfg.momentum;
      Step(p.w1, velocity.w1, bl.gradient.w1, lr, mu);
      Step(p.b1, velocity.b1, bl.gradient.b1, lr, mu);
      Step(p.w_head, velocity.w_head, bl.gradient.w_head, lr, mu);
      Step(p.b_head, velocity.b_head, bl.gradient.b_head, lr, mu);
      Step(p.w_traj, velocity.w_traj, bl.gradient.w_traj, lr, mu);
      Step(p.b_traj, velocity.b_traj, bl.gradient.b_traj, lr, mu);
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(train.size()));
  }
  return result;
}

}  // namespace orient
