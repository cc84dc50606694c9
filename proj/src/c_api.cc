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

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "orient/commands.h"
#include "orient/config.h"
#include "orient/error.h"
#include "orient/io.h"
#include "orient/synth.h"
#include "orient/train.h"

struct orient_config {
  orient::ExperimentConfig cfg;
};

struct orient_dataset {
  orient::Dataset data;
};

struct orient_model {
  orient::ModelParams params;
  std::vector<double> loss_history;
};

struct orient_report {
  orient::EvalReport report;
};

namespace {

thread_local std::string last_error;

orient_status StatusFor(orient::ErrorCode code) {
  switch (code) {
    case orient::ErrorCode::kInvalidArgument:
      return ORIENT_ERR_INVALID_ARGUMENT;
    case orient::ErrorCode::kIo:
      return ORIENT_ERR_IO;
    case orient::ErrorCode::kParse:
      return ORIENT_ERR_PARSE;
    case orient::ErrorCode::kDiverged:
      return ORIENT_ERR_DIVERGED;
    case orient::ErrorCode::kValidation:
      return ORIENT_ERR_VALIDATION;
  }
  return ORIENT_ERR_INTERNAL;
}

orient_status Fail(orient_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes. No exception ever
// crosses the C boundary.
template <typename F>
orient_status Guard(F&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const orient::Error& e) {
    return Fail(StatusFor(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(ORIENT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(ORIENT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(ORIENT_ERR_INTERNAL, "unknown error");
  }
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(const void* p, const char* what) {
  if (p == nullptr) orient::ThrowInvalid(std::string(what) + " is NULL");
}

orient_status Command(const char* name, const orient_config* cfg,
                      const char* out_dir, char** summary) {
  return Guard([&] {
    Require(name, "command");
    Require(cfg, "config");
    Require(out_dir, "out_dir");
    if (summary != nullptr) *summary = nullptr;
    const orient::CommandOutcome outcome =
        orient::RunCommand(name, cfg->cfg, out_dir);
    if (summary != nullptr) *summary = Duplicate(outcome.summary);
    if (!outcome.ok) {
      return Fail(ORIENT_ERR_VALIDATION,
                  std::string(name) + ": validation failed");
    }
    return ORIENT_OK;
  });
}

}  // namespace

extern "C" {

const char* orient_version(void) { return ORIENT_VERSION_STRING; }

const char* orient_last_error(void) { return last_error.c_str(); }

const char* orient_status_name(orient_status status) {
  switch (status) {
    case ORIENT_OK:
      return "ok";
    case ORIENT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case ORIENT_ERR_IO:
      return "i/o error";
    case ORIENT_ERR_PARSE:
      return "parse error";
    case ORIENT_ERR_DIVERGED:
      return "training diverged";
    case ORIENT_ERR_VALIDATION:
      return "validation failed";
    case ORIENT_ERR_NOT_FOUND:
      return "not found";
    case ORIENT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void orient_string_free(char* s) { std::free(s); }

orient_status orient_config_new(orient_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new orient_config();
    return ORIENT_OK;
  });
}

orient_status orient_config_load(const char* path, orient_config** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new orient_config{orient::LoadConfig(path)};
    return ORIENT_OK;
  });
}

orient_status orient_config_parse(const char* json, orient_config** out) {
  return Guard([&] {
    Require(json, "json");
    Require(out, "out");
    *out = new orient_config{orient::ParseConfig(json)};
    return ORIENT_OK;
  });
}

orient_status orient_config_set(orient_config* cfg, const char* assignment) {
  return Guard([&] {
    Require(cfg, "config");
    Require(assignment, "assignment");
    orient::ApplyOverride(cfg->cfg, assignment);
    return ORIENT_OK;
  });
}

orient_status orient_config_to_json(const orient_config* cfg, char** out) {
  return Guard([&] {
    Require(cfg, "config");
    Require(out, "out");
    *out = Duplicate(orient::ConfigToJson(cfg->cfg));
    return ORIENT_OK;
  });
}

orient_status orient_config_describe(char** out) {
  return Guard([&] {
    Require(out, "out");
    *out = Duplicate(orient::DescribeConfigKeys());
    return ORIENT_OK;
  });
}

void orient_config_free(orient_config* cfg) { delete cfg; }

orient_status orient_cmd_synth(const orient_config* cfg, const char* out_dir,
                               char** summary) {
  return Command("synth", cfg, out_dir, summary);
}

orient_status orient_cmd_train(const orient_config* cfg, const char* out_dir,
                               char** summary) {
  return Command("train", cfg, out_dir, summary);
}

orient_status orient_cmd_eval(const orient_config* cfg, const char* out_dir,
                              char** summary) {
  return Command("eval", cfg, out_dir, summary);
}

orient_status orient_cmd_landscape(const orient_config* cfg,
                                   const char* out_dir, char** summary) {
  return Command("landscape", cfg, out_dir, summary);
}

orient_status orient_cmd_gradcheck(const orient_config* cfg,
                                   const char* out_dir, char** summary) {
  return Command("gradcheck", cfg, out_dir, summary);
}

orient_status orient_cmd_report(const orient_config* cfg, const char* out_dir,
                                char** summary) {
  return Command("report", cfg, out_dir, summary);
}

orient_status orient_cmd_run(const char* command, const orient_config* cfg,
                             const char* out_dir, char** summary) {
  return Command(command, cfg, out_dir, summary);
}

orient_status orient_dataset_generate(const orient_config* cfg,
                                      orient_dataset** out) {
  return Guard([&] {
    Require(cfg, "config");
    Require(out, "out");
    *out = new orient_dataset{orient::GenerateDataset(cfg->cfg.scene)};
    return ORIENT_OK;
  });
}

orient_status orient_dataset_load(const char* path, orient_dataset** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new orient_dataset{orient::ReadDataset(path)};
    return ORIENT_OK;
  });
}

orient_status orient_dataset_save(const orient_dataset* ds, const char* path) {
  return Guard([&] {
    Require(ds, "dataset");
    Require(path, "path");
    orient::WriteDataset(path, ds->data);
    return ORIENT_OK;
  });
}

orient_status orient_dataset_counts(const orient_dataset* ds,
                                    size_t* num_train, size_t* num_val) {
  return Guard([&] {
    Require(ds, "dataset");
    if (num_train != nullptr) *num_train = ds->data.train.size();
    if (num_val != nullptr) *num_val = ds->data.val.size();
    return ORIENT_OK;
  });
}

void orient_dataset_free(orient_dataset* ds) { delete ds; }

orient_status orient_model_train(const orient_config* cfg,
                                 const orient_dataset* ds, const char* run,
                                 uint64_t seed, orient_model** out) {
  return Guard([&] {
    Require(cfg, "config");
    Require(ds, "dataset");
    Require(run, "run");
    Require(out, "out");
    const orient::TrainConfig tc = orient::RunConfig(cfg->cfg, run, seed);
    orient::TrainResult result = orient::Train(tc, ds->data.train);
    *out = new orient_model{std::move(result.params),
                            std::move(result.loss_history)};
    return ORIENT_OK;
  });
}

orient_status orient_model_load(const char* path, orient_model** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new orient_model{orient::ReadCheckpoint(path), {}};
    return ORIENT_OK;
  });
}

orient_status orient_model_save(const orient_model* model, const char* path) {
  return Guard([&] {
    Require(model, "model");
    Require(path, "path");
    orient::WriteCheckpoint(path, model->params);
    return ORIENT_OK;
  });
}

orient_status orient_model_loss_history(const orient_model* model,
                                        const double** values, size_t* count) {
  return Guard([&] {
    Require(model, "model");
    Require(values, "values");
    Require(count, "count");
    *values = model->loss_history.data();
    *count = model->loss_history.size();
    return ORIENT_OK;
  });
}

void orient_model_free(orient_model* model) { delete model; }

orient_status orient_model_evaluate(const orient_model* model,
                                    const orient_dataset* ds,
                                    const orient_config* cfg,
                                    orient_report** out) {
  return Guard([&] {
    Require(model, "model");
    Require(ds, "dataset");
    Require(out, "out");
    const orient::EvalOptions options =
        cfg != nullptr ? cfg->cfg.eval : orient::EvalOptions{};
    *out = new orient_report{
        orient::EvaluateModel(model->params, ds->data.val, options)};
    return ORIENT_OK;
  });
}

orient_status orient_report_metric(const orient_report* report,
                                   const char* name, double* value) {
  return Guard([&] {
    Require(report, "report");
    Require(name, "name");
    Require(value, "value");
    const orient::EvalReport& r = report->report;
    const std::string key = name;
    std::optional<double> v;
    if (key == "ap") {
      v = r.ap;
    } else if (key == "aos") {
      v = r.aos;
    } else if (key == "hoe_all") {
      v = r.errors.hoe_all;
    } else if (key == "foe_all") {
      v = r.errors.foe_all;
    } else if (key == "foe_moving") {
      v = r.errors.foe_moving;
    } else if (key == "l2_all") {
      v = r.errors.l2_all;
    } else if (key == "l2_moving") {
      v = r.errors.l2_moving;
    } else if (key == "mean_flip_prob") {
      v = r.mean_flip_prob;
    } else {
      return Fail(ORIENT_ERR_INVALID_ARGUMENT, "unknown metric '" + key + "'");
    }
    if (!v) {
      return Fail(ORIENT_ERR_NOT_FOUND,
                  "metric '" + key + "' is not available in this report");
    }
    *value = *v;
    return ORIENT_OK;
  });
}

orient_status orient_report_save(const orient_report* report,
                                 const char* path) {
  return Guard([&] {
    Require(report, "report");
    Require(path, "path");
    orient::WriteReport(path, report->report);
    return ORIENT_OK;
  });
}

void orient_report_free(orient_report* report) { delete report; }

}  // extern "C"
