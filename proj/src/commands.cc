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

#include "orient/commands.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "orient/error.h"
#include "orient/io.h"
#include "orient/landscape.h"

namespace orient {
namespace {

namespace fs = std::filesystem;

std::string Join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void Prepare(const ExperimentConfig& cfg, const std::string& out_dir,
             std::string_view command) {
  cfg.Validate();
  if (out_dir.empty()) ThrowInvalid("output directory must be given");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create '" + out_dir + "': " + ec.message());
  }
  WriteFile(Join(out_dir, "config.json"), ConfigToJson(cfg));
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::ordered_json meta = {{"command", std::string(command)},
                                 {"created_utc", stamp}};
  WriteFile(Join(out_dir, "metadata.json"), meta.dump(2) + "\n");
}

Dataset LoadOrGenerate(const ExperimentConfig& cfg) {
  if (!cfg.dataset.empty()) return ReadDataset(cfg.dataset);
  return GenerateDataset(cfg.scene);
}

std::string RunStem(const std::string& run, uint64_t seed) {
  return run + "_seed" + std::to_string(seed);
}

// "dir/sin_cos_seed0.checkpoint.json" -> "sin_cos_seed0".
std::string CheckpointStem(const std::string& path) {
  std::string name = fs::path(path).filename().string();
  for (const std::string suffix : {".checkpoint.json", ".json"}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name;
}

void WriteEvalArtifacts(const std::string& out_dir, const std::string& stem,
                        const EvalReport& report) {
  WriteReport(Join(out_dir, stem + ".report.json"), report);
  WritePrCurve(Join(out_dir, stem + ".pr_curve.csv"), report.pr_curve);
  if (report.flip_bins) {
    WriteFlipBins(Join(out_dir, stem + ".flip_bins.csv"), *report.flip_bins);
  }
}

}  // namespace

CommandOutcome CmdSynth(const ExperimentConfig& cfg, const std::string& out_dir) {
  Prepare(cfg, out_dir, "synth");
  const Dataset ds = GenerateDataset(cfg.scene);
  const std::string path = Join(out_dir, "dataset.jsonl");
  WriteDataset(path, ds);
  std::ostringstream s;
  s << "wrote " << ds.train.size() + ds.val.size() << " actors (train "
    << ds.train.size() << ", val " << ds.val.size() << ") to " << path << "\n";
  return {true, s.str()};
}

CommandOutcome CmdTrain(const ExperimentConfig& cfg, const std::string& out_dir) {
  Prepare(cfg, out_dir, "train");
  const Dataset ds = LoadOrGenerate(cfg);
  std::ostringstream s;
  for (const std::string& run : cfg.methods) {
    for (int k = 0; k < cfg.train_seeds; ++k) {
      const uint64_t seed = cfg.train.seed + static_cast<uint64_t>(k);
      const TrainConfig tc = RunConfig(cfg, run, seed);
      const TrainResult result = Train(tc, ds.train);
      const std::string stem = RunStem(run, seed);
      WriteCheckpoint(Join(out_dir, stem + ".checkpoint.json"), result.params);
      WriteLossHistory(Join(out_dir, stem + ".loss_history.csv"),
                       result.loss_history);
      s << stem << ": " << tc.epochs << " epochs";
      if (!result.loss_history.empty()) {
        s << ", loss " << FormatNumber(result.loss_history.front()) << " -> "
          << FormatNumber(result.loss_history.back());
      }
      s << "\n";
    }
  }
  return {true, s.str()};
}

CommandOutcome CmdEval(const ExperimentConfig& cfg, const std::string& out_dir) {
  if (cfg.checkpoints.empty() && cfg.detections.empty()) {
    ThrowInvalid("eval needs 'checkpoints' or 'detections'");
  }
  Prepare(cfg, out_dir, "eval");
  const Dataset ds = LoadOrGenerate(cfg);
  std::vector<GtActor> gts;
  gts.reserve(ds.val.size());
  for (const SynthActor& a : ds.val) gts.push_back(a.gt);

  std::vector<EvalReport> reports;
  for (const std::string& path : cfg.checkpoints) {
    const ModelParams params = ReadCheckpoint(path);
    EvalReport report = EvaluateModel(params, ds.val, cfg.eval);
    WriteEvalArtifacts(out_dir, CheckpointStem(path), report);
    reports.push_back(std::move(report));
  }
  if (!cfg.detections.empty()) {
    const std::vector<DetectionRecord> dets = ReadDetections(cfg.detections);
    EvalReport report = Evaluate(dets, gts, cfg.eval);
    report.name = fs::path(cfg.detections).stem().string();
    report.method = "detections";
    WriteEvalArtifacts(out_dir, report.name, report);
    reports.push_back(std::move(report));
  }
  const std::string table = FormatReportTable(reports);
  WriteFile(Join(out_dir, "eval_table.txt"), table);
  return {true, table};
}

CommandOutcome CmdLandscape(const ExperimentConfig& cfg,
                            const std::string& out_dir) {
  Prepare(cfg, out_dir, "landscape");
  std::ostringstream s;
  for (const std::string& name : cfg.landscape_losses) {
    LandscapeSpec spec;
    spec.loss = ParseLandscapeLoss(name);
    spec.gt_yaw = DegToRad(cfg.landscape_gt_deg);
    spec.lo = cfg.landscape_lo;
    spec.hi = cfg.landscape_hi;
    spec.step = cfg.landscape_step;
    spec.beta = cfg.train.beta;
    const Landscape land = ComputeLandscape(spec);
    const std::vector<GridPoint> minima = LocalMinima(land);
    WriteLandscapeCsv(Join(out_dir, name + ".csv"), land);
    WriteMinimaCsv(Join(out_dir, name + ".minima.csv"), minima);
    WriteLandscapePgm(Join(out_dir, name + ".pgm"), land);
    s << name << ": " << minima.size() << " local minima";
    for (const GridPoint& p : minima) {
      s << " (" << FormatNumber(p.s) << ", " << FormatNumber(p.c)
        << ") = " << FormatNumber(p.loss) << ";";
    }
    s << "\n";
  }
  return {true, s.str()};
}

CommandOutcome CmdGradcheck(const ExperimentConfig& cfg,
                            const std::string& out_dir) {
  Prepare(cfg, out_dir, "gradcheck");
  CommandOutcome outcome;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::ostringstream s;
  for (const std::string& run : cfg.methods) {
    const TrainConfig tc = RunConfig(cfg, run, 0);
    const GradCheckReport r =
        GradCheck(tc.method, cfg.gradcheck_trials, cfg.gradcheck_tolerance,
                  cfg.gradcheck_seed, tc.loss_options());
    outcome.ok = outcome.ok && r.passed;
    results.push_back({{"run", run},
                       {"trials", r.trials},
                       {"skipped", r.skipped},
                       {"max_rel_error", Round9(r.max_rel_error)},
                       {"tolerance", Round9(cfg.gradcheck_tolerance)},
                       {"passed", r.passed}});
    s << (r.passed ? "PASS " : "FAIL ") << run << ": max relative error "
      << FormatNumber(r.max_rel_error) << " over " << r.trials
      << " trials (" << r.skipped << " redrawn)\n";
  }
  WriteFile(Join(out_dir, "gradcheck.json"), results.dump(2) + "\n");
  outcome.summary = s.str();
  return outcome;
}

CommandOutcome CmdReport(const ExperimentConfig& cfg,
                         const std::string& out_dir) {
  if (cfg.reports.empty()) ThrowInvalid("report needs 'reports'");
  Prepare(cfg, out_dir, "report");
  std::vector<EvalReport> reports;
  for (const std::string& path : cfg.reports) reports.push_back(ReadReport(path));
  const std::string table = FormatReportTable(reports);
  WriteFile(Join(out_dir, "comparison.txt"), table);
  return {true, table};
}

CommandOutcome RunCommand(std::string_view name, const ExperimentConfig& cfg,
                          const std::string& out_dir) {
  if (name == "synth") return CmdSynth(cfg, out_dir);
  if (name == "train") return CmdTrain(cfg, out_dir);
  if (name == "eval") return CmdEval(cfg, out_dir);
  if (name == "landscape") return CmdLandscape(cfg, out_dir);
  if (name == "gradcheck") return CmdGradcheck(cfg, out_dir);
  if (name == "report") return CmdReport(cfg, out_dir);
  ThrowInvalid("unknown command '" + std::string(name) + "'");
}

}  // namespace orient
