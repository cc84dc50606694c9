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

#include "orient/error.h"
#include "orient/train.h"

namespace orient {

std::vector<DetectionRecord> PredictDetections(
    const ModelParams& params, std::span<const SynthActor> actors) {
  std::vector<DetectionRecord> dets;
  dets.reserve(actors.size());
  if (actors.empty()) return dets;
  Eigen::MatrixXd x(params.input_dim, static_cast<Eigen::Index>(actors.size()));
  for (size_t j = 0; j < actors.size(); ++j) {
    if (static_cast<int>(actors[j].features.size()) != params.input_dim) {
      ThrowInvalid("feature dimension does not match the model");
    }
    for (int i = 0; i < params.input_dim; ++i) x(i, j) = actors[j].features[i];
  }
  const std::vector<ModelOutput> outputs = ForwardBatch(params, x);
  for (size_t j = 0; j < actors.size(); ++j) {
    const GtActor& gt = actors[j].gt;
    const ModelOutput& out = outputs[j];
    DetectionRecord det;
    det.frame = gt.frame;
    det.id = gt.id;
    det.score = 1.0;
    for (const Vec2& o : out.waypoint_offsets) {
      det.waypoints.push_back({gt.box.cx + o.x, gt.box.cy + o.y});
    }
    DecodedOrientation decoded = PostprocessFlip(Decode(out.head, params.loss));
    if (!params.method.full_range()) {
      const double resolved =
          TrajDirectionConvert(decoded.yaw.front(), det.waypoints);
      if (resolved != decoded.yaw.front()) {
        for (double& y : decoded.yaw) y = WrapFull(y + kPi);
      }
    }
    det.yaw = decoded.yaw;
    det.flip_prob = decoded.flip_prob;
    // The box keeps its ground-truth pose so matching is exact; only the
    // reported orientation comes from the model.
    det.box = gt.box;
    dets.push_back(std::move(det));
  }
  return dets;
}

EvalReport EvaluateModel(const ModelParams& params,
                         std::span<const SynthActor> actors,
                         const EvalOptions& options) {
  const std::vector<DetectionRecord> dets = PredictDetections(params, actors);
  std::vector<GtActor> gts;
  gts.reserve(actors.size());
  for (const SynthActor& a : actors) gts.push_back(a.gt);
  EvalReport report = Evaluate(dets, gts, options);
  report.method = params.method.Name();
  report.name = report.method;
  if (params.loss.no_half) report.name += "-no_half";
  if (params.loss.no_flip) report.name += "-no_flip";
  return report;
}

}  // namespace orient
