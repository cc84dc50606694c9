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

#include "orient/orient_c.h"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("orient_c_api_test_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    ASSERT_EQ(orient_config_new(&cfg_), ORIENT_OK);
    for (const char* kv : {"frames=10", "actors_per_frame=8", "epochs=2",
                           "hidden=8", "horizon=10"}) {
      ASSERT_EQ(orient_config_set(cfg_, kv), ORIENT_OK) << orient_last_error();
    }
  }
  void TearDown() override {
    orient_config_free(cfg_);
    fs::remove_all(dir_);
  }

  fs::path dir_;
  orient_config* cfg_ = nullptr;
};

TEST_F(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(orient_version(), "0.1.0");
  EXPECT_STREQ(orient_status_name(ORIENT_OK), "ok");
  EXPECT_STRNE(orient_status_name(ORIENT_ERR_PARSE), "ok");
}

TEST_F(CApiTest, ConfigErrors) {
  EXPECT_EQ(orient_config_set(cfg_, "no_such_key=1"), ORIENT_ERR_PARSE);
  EXPECT_NE(std::string(orient_last_error()).find("no_such_key"),
            std::string::npos);
  EXPECT_EQ(orient_config_set(nullptr, "epochs=1"),
            ORIENT_ERR_INVALID_ARGUMENT);
  orient_config* other = nullptr;
  EXPECT_EQ(orient_config_load((dir_ / "absent.json").c_str(), &other),
            ORIENT_ERR_IO);
  EXPECT_EQ(other, nullptr);
  // Values are validated when a command runs, not when they are parsed.
  ASSERT_EQ(orient_config_parse("{\"epochs\": -1}", &other), ORIENT_OK);
  char* summary = nullptr;
  EXPECT_EQ(orient_cmd_synth(other, (dir_ / "x").c_str(), &summary),
            ORIENT_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(orient_last_error()).find("epochs"), std::string::npos);
  orient_config_free(other);
  other = nullptr;
  EXPECT_EQ(orient_config_parse("{\"epochs\": 3}", &other), ORIENT_OK);
  char* json = nullptr;
  ASSERT_EQ(orient_config_to_json(other, &json), ORIENT_OK);
  EXPECT_NE(std::string(json).find("\"epochs\": 3"), std::string::npos);
  orient_string_free(json);
  orient_config_free(other);
  orient_config_free(nullptr);
}

TEST_F(CApiTest, DatasetModelReportLifecycle) {
  orient_dataset* ds = nullptr;
  ASSERT_EQ(orient_dataset_generate(cfg_, &ds), ORIENT_OK);
  size_t n_train = 0, n_val = 0;
  ASSERT_EQ(orient_dataset_counts(ds, &n_train, &n_val), ORIENT_OK);
  EXPECT_EQ(n_train, 64u);
  EXPECT_EQ(n_val, 16u);

  fs::create_directories(dir_);
  const std::string ds_path = (dir_ / "d.jsonl").string();
  ASSERT_EQ(orient_dataset_save(ds, ds_path.c_str()), ORIENT_OK);
  orient_dataset* loaded = nullptr;
  ASSERT_EQ(orient_dataset_load(ds_path.c_str(), &loaded), ORIENT_OK);
  orient_dataset_free(loaded);

  orient_model* model = nullptr;
  ASSERT_EQ(orient_model_train(cfg_, ds, "sin_cos", 0, &model), ORIENT_OK)
      << orient_last_error();
  const double* history = nullptr;
  size_t count = 0;
  ASSERT_EQ(orient_model_loss_history(model, &history, &count), ORIENT_OK);
  EXPECT_EQ(count, 2u);

  orient_report* report = nullptr;
  ASSERT_EQ(orient_model_evaluate(model, ds, cfg_, &report), ORIENT_OK);
  double ap = 0.0;
  ASSERT_EQ(orient_report_metric(report, "ap", &ap), ORIENT_OK);
  EXPECT_EQ(ap, 1.0);
  double foe = -1.0;
  ASSERT_EQ(orient_report_metric(report, "foe_all", &foe), ORIENT_OK);
  EXPECT_GE(foe, 0.0);
  double flip = 0.0;
  EXPECT_EQ(orient_report_metric(report, "mean_flip_prob", &flip),
            ORIENT_ERR_NOT_FOUND);
  EXPECT_EQ(orient_report_metric(report, "bogus", &flip),
            ORIENT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(orient_report_save(report, (dir_ / "r.json").c_str()), ORIENT_OK);
  orient_report_free(report);

  const std::string ckpt = (dir_ / "m.json").string();
  ASSERT_EQ(orient_model_save(model, ckpt.c_str()), ORIENT_OK);
  orient_model* reloaded = nullptr;
  ASSERT_EQ(orient_model_load(ckpt.c_str(), &reloaded), ORIENT_OK);
  orient_model_free(reloaded);

  orient_model* bad = nullptr;
  EXPECT_EQ(orient_model_train(cfg_, ds, "sin_cos-no_half", 0, &bad),
            ORIENT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bad, nullptr);
  orient_model_free(model);
  orient_dataset_free(ds);
}

TEST_F(CApiTest, CommandsReportValidationFailures) {
  ASSERT_EQ(orient_config_set(cfg_, "methods=sin_cos"), ORIENT_OK);
  ASSERT_EQ(orient_config_set(cfg_, "gradcheck_tolerance=0"), ORIENT_OK);
  char* summary = nullptr;
  EXPECT_EQ(orient_cmd_gradcheck(cfg_, dir_.c_str(), &summary),
            ORIENT_ERR_VALIDATION);
  ASSERT_NE(summary, nullptr);
  EXPECT_NE(std::string(summary).find("sin_cos"), std::string::npos);
  orient_string_free(summary);
  EXPECT_TRUE(fs::exists(dir_ / "gradcheck.json"));
  EXPECT_TRUE(fs::exists(dir_ / "metadata.json"));

  summary = nullptr;
  EXPECT_EQ(orient_cmd_run("nonsense", cfg_, dir_.c_str(), &summary),
            ORIENT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(summary, nullptr);
}

TEST_F(CApiTest, SynthCommandWritesDataset) {
  char* summary = nullptr;
  ASSERT_EQ(orient_cmd_synth(cfg_, dir_.c_str(), &summary), ORIENT_OK)
      << orient_last_error();
  orient_string_free(summary);
  orient_dataset* ds = nullptr;
  ASSERT_EQ(orient_dataset_load((dir_ / "dataset.jsonl").c_str(), &ds),
            ORIENT_OK);
  size_t n_train = 0, n_val = 0;
  orient_dataset_counts(ds, &n_train, &n_val);
  EXPECT_EQ(n_train + n_val, 80u);
  orient_dataset_free(ds);
}

}  // namespace
