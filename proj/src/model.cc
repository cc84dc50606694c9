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

#include <cmath>
#include <random>
#include <string>

#include "orient/error.h"
#include "orient/train.h"

namespace orient {
namespace {

void FillUniform(Eigen::MatrixXd& m, int fan_in, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

struct Activations {
  Eigen::MatrixXd input;   // standardized
  Eigen::MatrixXd pre;     // hidden x batch
  Eigen::MatrixXd hidden;  // after the rectifier
  Eigen::MatrixXd head;
  Eigen::MatrixXd traj;
};

Activations Run(const ModelParams& p, const Eigen::MatrixXd& x) {
  if (x.rows() != p.input_dim) {
    ThrowInvalid("feature dimension " + std::to_string(x.rows()) +
                 " does not match model input " + std::to_string(p.input_dim));
  }
  Eigen::MatrixXd z =
      ((x.colwise() - p.input_mean).array().colwise() * p.input_scale.array())
          .matrix();
  Activations a;
  a.input = z;
  a.pre = (p.w1 * a.input).colwise() + p.b1;
  a.hidden = a.pre.cwiseMax(0.0);
  a.head = (p.w_head * a.hidden).colwise() + p.b_head;
  a.traj = (p.w_traj * a.hidden).colwise() + p.b_traj;
  return a;
}

ModelOutput ToOutput(const ModelParams& p, const Activations& a,
                     Eigen::Index col) {
  ModelOutput out;
  out.head.method = p.method;
  out.head.horizon = p.horizon;
  out.head.values.assign(a.head.col(col).data(),
                         a.head.col(col).data() + a.head.rows());
  out.waypoint_offsets.reserve(p.horizon);
  for (int k = 0; k < p.horizon; ++k) {
    out.waypoint_offsets.push_back({kWaypointUnit * a.traj(2 * k, col),
                                    kWaypointUnit * a.traj(2 * k + 1, col)});
  }
  return out;
}

}  // namespace

ModelParams InitModel(const TrainConfig& cfg, int input_dim) {
  cfg.Validate();
  if (input_dim < 1) ThrowInvalid("input dimension must be >= 1");
  ModelParams p;
  p.method = cfg.method;
  p.loss = cfg.loss_options();
  p.horizon = cfg.horizon;
  p.input_dim = input_dim;
  p.hidden = cfg.hidden;
  p.input_mean = Eigen::VectorXd::Zero(input_dim);
  p.input_scale = Eigen::VectorXd::Ones(input_dim);
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 1);
  p.w1.resize(cfg.hidden, input_dim);
  p.w_head.resize(p.head_size(), cfg.hidden);
  p.w_traj.resize(2 * cfg.horizon, cfg.hidden);
  FillUniform(p.w1, input_dim, rng);
  FillUniform(p.w_head, cfg.hidden, rng);
  FillUniform(p.w_traj, cfg.hidden, rng);
  p.b1 = Eigen::VectorXd::Zero(cfg.hidden);
  p.b_head = Eigen::VectorXd::Zero(p.head_size());
  p.b_traj = Eigen::VectorXd::Zero(2 * cfg.horizon);
  return p;
}

ModelParams InitModel(const TrainConfig& cfg,
                      std::span<const SynthActor> train) {
  if (train.empty()) ThrowInvalid("training set is empty");
  const int dim = static_cast<int>(train.front().features.size());
  ModelParams p = InitModel(cfg, dim);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(dim);
  for (const SynthActor& a : train) {
    if (static_cast<int>(a.features.size()) != dim) {
      ThrowInvalid("inconsistent feature dimension in training set");
    }
    const Eigen::Map<const Eigen::VectorXd> f(a.features.data(), dim);
    sum += f;
    sum_sq += f.cwiseProduct(f);
  }
  const double n = static_cast<double>(train.size());
  p.input_mean = sum / n;
  const Eigen::VectorXd var =
      (sum_sq / n - p.input_mean.cwiseProduct(p.input_mean)).cwiseMax(0.0);
  p.input_scale = (var.array().sqrt() + 1e-6).inverse().matrix();
  return p;
}

ModelOutput Forward(const ModelParams& params,
                    std::span<const double> features) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(features.size()), 1);
  for (size_t i = 0; i < features.size(); ++i) x(i, 0) = features[i];
  return ToOutput(params, Run(params, x), 0);
}

std::vector<ModelOutput> ForwardBatch(const ModelParams& params,
                                      const Eigen::MatrixXd& features) {
  const Activations a = Run(params, features);
  std::vector<ModelOutput> out;
  out.reserve(features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    out.push_back(ToOutput(params, a, j));
  }
  return out;
}

BatchLoss ComputeBatchLoss(const ModelParams& params,
                           std::span<const SynthActor* const> items,
                           double waypoint_weight) {
  if (items.empty()) ThrowInvalid("empty batch");
  const Eigen::Index batch = static_cast<Eigen::Index>(items.size());
  Eigen::MatrixXd x(params.input_dim, batch);
  for (Eigen::Index j = 0; j < batch; ++j) {
    const std::vector<double>& f = items[j]->features;
    if (static_cast<int>(f.size()) != params.input_dim) {
      ThrowInvalid("feature dimension mismatch in batch");
    }
    for (int i = 0; i < params.input_dim; ++i) x(i, j) = f[i];
  }
  const Activations a = Run(params, x);

  Eigen::MatrixXd g_head(a.head.rows(), batch);
  Eigen::MatrixXd g_traj(a.traj.rows(), batch);
  const double beta = params.loss.beta;
  double total = 0.0;
  HeadGradient head_grad;
  for (Eigen::Index j = 0; j < batch; ++j) {
    const GtActor& gt = items[j]->gt;
    if (static_cast<int>(gt.yaw.size()) != params.horizon ||
        static_cast<int>(gt.waypoints.size()) != params.horizon) {
      ThrowInvalid("ground-truth horizon does not match the model");
    }
    HeadOutput head{params.method, params.horizon,
                    std::vector<double>(a.head.col(j).data(),
                                        a.head.col(j).data() + a.head.rows())};
    total += ComputeLoss(head, gt.yaw, params.loss, &head_grad).total;
    for (Eigen::Index r = 0; r < a.head.rows(); ++r) g_head(r, j) = head_grad[r];
    for (int k = 0; k < params.horizon; ++k) {
      const double target[2] = {(gt.waypoints[k].x - gt.box.cx) / kWaypointUnit,
                                (gt.waypoints[k].y - gt.box.cy) / kWaypointUnit};
      for (int d = 0; d < 2; ++d) {
        const double diff = a.traj(2 * k + d, j) - target[d];
        total += waypoint_weight * SmoothL1(diff, beta);
        g_traj(2 * k + d, j) = waypoint_weight * SmoothL1Grad(diff, beta);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(batch);
  g_head *= inv;
  g_traj *= inv;

  BatchLoss out;
  out.mean_loss = total * inv;
  ModelParams& g = out.gradient;
  g.method = params.method;
  g.loss = params.loss;
  g.horizon = params.horizon;
  g.input_dim = params.input_dim;
  g.hidden = params.hidden;
  g.w_head = g_head * a.hidden.transpose();
  g.b_head = g_head.rowwise().sum();
  g.w_traj = g_traj * a.hidden.transpose();
  g.b_traj = g_traj.rowwise().sum();
  Eigen::MatrixXd g_hidden =
      params.w_head.transpose() * g_head + params.w_traj.transpose() * g_traj;
  g_hidden = g_hidden.cwiseProduct((a.pre.array() > 0.0).cast<double>().matrix());
  g.w1 = g_hidden * a.input.transpose();
  g.b1 = g_hidden.rowwise().sum();
  return out;
}

}  // namespace orient
