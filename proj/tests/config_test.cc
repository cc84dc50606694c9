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

#include "orient/config.h"

#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "orient/error.h"

namespace orient {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ConfigTest, DefaultsAreValid) {
  const ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.methods.size(), 8u);
  EXPECT_EQ(cfg.train.horizon, 30);
  EXPECT_EQ(cfg.eval.ap_iou, 0.7);
}

TEST(ConfigTest, ParsesFlatKeys) {
  const ExperimentConfig cfg = ParseConfig(R"({
    "frames": 12, "front_signal": 1.0, "horizon": 10,
    "methods": ["sin_cos", "flip_aware-no_half"], "epochs": 3,
    "ap_interpolation": "r40", "train_seed": 7
  })");
  EXPECT_EQ(cfg.scene.frames, 12);
  EXPECT_EQ(cfg.scene.front_signal, 1.0);
  EXPECT_EQ(cfg.scene.horizon, 10);
  EXPECT_EQ(cfg.train.horizon, 10);
  EXPECT_EQ(cfg.methods.size(), 2u);
  EXPECT_EQ(cfg.train.epochs, 3);
  EXPECT_EQ(cfg.eval.interp, ApInterpolation::kRecall40);
  EXPECT_EQ(cfg.train.seed, 7u);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadTypes) {
  EXPECT_EQ(CodeOf([] { ParseConfig(R"({"frams": 3})"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseConfig(R"({"frames": "many"})"); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseConfig("[1, 2]"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseConfig("{"); }), ErrorCode::kParse);
}

TEST(ConfigTest, ValidationCatchesBadValues) {
  ExperimentConfig cfg;
  cfg.methods = {"sin_cos-no_half"};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.methods = {"unknown"};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.scene.actors_per_frame = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.landscape_losses = {"half"};
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(ConfigTest, Overrides) {
  ExperimentConfig cfg;
  ApplyOverride(cfg, "epochs=4");
  EXPECT_EQ(cfg.train.epochs, 4);
  ApplyOverride(cfg, "methods=sin_cos,flip_aware");
  ASSERT_EQ(cfg.methods.size(), 2u);
  EXPECT_EQ(cfg.methods[1], "flip_aware");
  ApplyOverride(cfg, "methods=[\"l1_sin\"]");
  EXPECT_EQ(cfg.methods, std::vector<std::string>{"l1_sin"});
  ApplyOverride(cfg, "dataset=/tmp/x.jsonl");
  EXPECT_EQ(cfg.dataset, "/tmp/x.jsonl");
  ApplyOverride(cfg, "learning_rate=0.5");
  EXPECT_EQ(cfg.train.learning_rate, 0.5);
  EXPECT_EQ(CodeOf([&] { ApplyOverride(cfg, "nokey=1"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { ApplyOverride(cfg, "epochs"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([&] { ApplyOverride(cfg, "epochs=abc"); }),
            ErrorCode::kParse);
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig cfg;
  ApplyOverride(cfg, "frames=9");
  ApplyOverride(cfg, "methods=multibin_4");
  ApplyOverride(cfg, "grad_clip=0");
  const ExperimentConfig back = ParseConfig(ConfigToJson(cfg));
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(cfg));
  EXPECT_EQ(back.scene.frames, 9);
  EXPECT_EQ(back.train.grad_clip, 0.0);
}

TEST(ConfigTest, RunConfigParsesAblationSuffixes) {
  const ExperimentConfig cfg;
  const TrainConfig a = RunConfig(cfg, "flip_aware-no_flip", 3);
  EXPECT_TRUE(a.no_flip);
  EXPECT_FALSE(a.no_half);
  EXPECT_EQ(a.seed, 3u);
  EXPECT_EQ(a.RunName(), "flip_aware-no_flip");
  EXPECT_EQ(RunConfig(cfg, "multibin_2", 0).method, Method::MultiBin(2));
}

TEST(ConfigTest, DescribeListsEveryKey) {
  const std::string text = DescribeConfigKeys();
  for (const char* key : {"frames", "front_signal", "epochs", "grad_clip",
                          "methods", "landscape_step", "gradcheck_trials",
                          "checkpoints", "ap_interpolation"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace orient
