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

#ifndef ORIENT_COMMANDS_H_
#define ORIENT_COMMANDS_H_

#include <string>
#include <string_view>

#include "orient/config.h"

namespace orient {

struct CommandOutcome {
  // False when the command ran but an internal validation failed, e.g. a
  // gradient check above tolerance.
  bool ok = true;
  std::string summary;  // human-readable, one line per artifact or check
};

// Every command writes config.json (the resolved configuration) and
// metadata.json (the only file carrying a timestamp) into `out_dir`, which
// is created if needed. All other artifacts are byte-identical across reruns.
CommandOutcome CmdSynth(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutcome CmdTrain(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutcome CmdEval(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutcome CmdLandscape(const ExperimentConfig& cfg,
                            const std::string& out_dir);
CommandOutcome CmdGradcheck(const ExperimentConfig& cfg,
                            const std::string& out_dir);
CommandOutcome CmdReport(const ExperimentConfig& cfg,
                         const std::string& out_dir);

// Dispatches on synth | train | eval | landscape | gradcheck | report.
CommandOutcome RunCommand(std::string_view name, const ExperimentConfig& cfg,
                          const std::string& out_dir);

}  // namespace orient

#endif  // ORIENT_COMMANDS_H_
