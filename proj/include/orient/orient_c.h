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

// C interface to orient-bench. Every function returns an orient_status;
// on failure orient_last_error() describes the problem for the calling
// thread until its next call into the library. Handles are opaque and must
// be released with the matching *_free function (which accepts NULL).
// Strings returned through char** are owned by the caller and released
// with orient_string_free.

#ifndef ORIENT_ORIENT_C_H_
#define ORIENT_ORIENT_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ORIENT_BUILDING_LIBRARY)
#define ORIENT_API __attribute__((visibility("default")))
#else
#define ORIENT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orient_status {
  ORIENT_OK = 0,
  ORIENT_ERR_INVALID_ARGUMENT = 1,
  ORIENT_ERR_IO = 2,
  ORIENT_ERR_PARSE = 3,
  ORIENT_ERR_DIVERGED = 4,
  // The command ran but a validation it performs did not pass.
  ORIENT_ERR_VALIDATION = 5,
  ORIENT_ERR_NOT_FOUND = 6,
  ORIENT_ERR_INTERNAL = 99
} orient_status;

typedef struct orient_config orient_config;
typedef struct orient_dataset orient_dataset;
typedef struct orient_model orient_model;
typedef struct orient_report orient_report;

ORIENT_API const char* orient_version(void);
ORIENT_API const char* orient_last_error(void);
ORIENT_API const char* orient_status_name(orient_status status);
ORIENT_API void orient_string_free(char* s);

// Configuration: defaults, a JSON file, or a JSON string; then key=value
// overrides.
ORIENT_API orient_status orient_config_new(orient_config** out);
ORIENT_API orient_status orient_config_load(const char* path,
                                            orient_config** out);
ORIENT_API orient_status orient_config_parse(const char* json,
                                             orient_config** out);
ORIENT_API orient_status orient_config_set(orient_config* cfg,
                                           const char* assignment);
ORIENT_API orient_status orient_config_to_json(const orient_config* cfg,
                                               char** out);
// Key reference with defaults, for help text.
ORIENT_API orient_status orient_config_describe(char** out);
ORIENT_API void orient_config_free(orient_config* cfg);

// Commands. On success *summary (if non-NULL) receives a readable summary.
// ORIENT_ERR_VALIDATION still fills *summary.
ORIENT_API orient_status orient_cmd_synth(const orient_config* cfg,
                                          const char* out_dir, char** summary);
ORIENT_API orient_status orient_cmd_train(const orient_config* cfg,
                                          const char* out_dir, char** summary);
ORIENT_API orient_status orient_cmd_eval(const orient_config* cfg,
                                         const char* out_dir, char** summary);
ORIENT_API orient_status orient_cmd_landscape(const orient_config* cfg,
                                              const char* out_dir,
                                              char** summary);
ORIENT_API orient_status orient_cmd_gradcheck(const orient_config* cfg,
                                              const char* out_dir,
                                              char** summary);
ORIENT_API orient_status orient_cmd_report(const orient_config* cfg,
                                           const char* out_dir,
                                           char** summary);
// Dispatch by name: synth, train, eval, landscape, gradcheck, report.
ORIENT_API orient_status orient_cmd_run(const char* command,
                                        const orient_config* cfg,
                                        const char* out_dir, char** summary);

// Datasets.
ORIENT_API orient_status orient_dataset_generate(const orient_config* cfg,
                                                 orient_dataset** out);
ORIENT_API orient_status orient_dataset_load(const char* path,
                                             orient_dataset** out);
ORIENT_API orient_status orient_dataset_save(const orient_dataset* ds,
                                             const char* path);
ORIENT_API orient_status orient_dataset_counts(const orient_dataset* ds,
                                               size_t* num_train,
                                               size_t* num_val);
ORIENT_API void orient_dataset_free(orient_dataset* ds);

// Models. `run` is a method name, optionally suffixed -no_half/-no_flip.
ORIENT_API orient_status orient_model_train(const orient_config* cfg,
                                            const orient_dataset* ds,
                                            const char* run, uint64_t seed,
                                            orient_model** out);
ORIENT_API orient_status orient_model_load(const char* path,
                                           orient_model** out);
ORIENT_API orient_status orient_model_save(const orient_model* model,
                                           const char* path);
ORIENT_API orient_status orient_model_loss_history(const orient_model* model,
                                                   const double** values,
                                                   size_t* count);
ORIENT_API void orient_model_free(orient_model* model);

// Reports over the validation split.
ORIENT_API orient_status orient_model_evaluate(const orient_model* model,
                                               const orient_dataset* ds,
                                               const orient_config* cfg,
                                               orient_report** out);
// Metric names: ap, aos, hoe_all, foe_all, foe_moving, l2_all, l2_moving,
// mean_flip_prob. ORIENT_ERR_NOT_FOUND when the value is unavailable,
// ORIENT_ERR_INVALID_ARGUMENT for an unknown name.
ORIENT_API orient_status orient_report_metric(const orient_report* report,
                                              const char* name, double* value);
ORIENT_API orient_status orient_report_save(const orient_report* report,
                                            const char* path);
ORIENT_API void orient_report_free(orient_report* report);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // ORIENT_ORIENT_C_H_
