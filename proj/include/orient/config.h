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

#ifndef ORIENT_CONFIG_H_
#define ORIENT_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "orient/metrics.h"
#include "orient/synth.h"
#include "orient/train.h"

namespace orient {

// Everything a command needs, read from one flat JSON object. Unknown keys
// are rejected. Relative paths resolve against the working directory.
struct ExperimentConfig {
  SceneConfig scene;
  // Optimizer and model settings; the method comes from `methods`.
  TrainConfig train;
  // Run names: a method name, optionally with -no_half or -no_flip.
  std::vector<std::string> methods = {
      "sin_cos_2x", "l1_sin",     "sin_cos",
      "multibin_2", "multibin_4", "flip_aware",
      "flip_aware-no_half", "flip_aware-no_flip"};
  // Seeds train.seed, train.seed + 1, ...
  int train_seeds = 1;
  EvalOptions eval;

  std::vector<std::string> landscape_losses = {
      "full", "full_plus_half", "min_full_flipped", "min_plus_half"};
  double landscape_gt_deg = 0.0;
  double landscape_lo = -1.5;
  double landscape_hi = 1.5;
  double landscape_step = 0.01;

  int gradcheck_trials = 100;
  double gradcheck_tolerance = 1e-4;
  uint64_t gradcheck_seed = 0;

  std::string dataset;                   // JSONL input; empty: generate
  std::vector<std::string> checkpoints;  // eval inputs
  std::string detections;                // eval input instead of a model
  std::vector<std::string> reports;      // report inputs

  void Validate() const;
};

// Training settings for one run name such as "flip_aware-no_half".
TrainConfig RunConfig(const ExperimentConfig& cfg, std::string_view run,
                      uint64_t seed);

ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::string& source = "<config>");
ExperimentConfig LoadConfig(const std::string& path);

// Applies "key=value". The value is read as JSON when it parses, otherwise
// as a string; list keys also accept comma-separated names.
void ApplyOverride(ExperimentConfig& cfg, std::string_view assignment);

// Canonical JSON with every key.
std::string ConfigToJson(const ExperimentConfig& cfg);

// One line per key: name, default and description.
std::string DescribeConfigKeys();

}  // namespace orient

#endif  // ORIENT_CONFIG_H_
