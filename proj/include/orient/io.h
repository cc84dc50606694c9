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

#ifndef ORIENT_IO_H_
#define ORIENT_IO_H_

#include <span>
#include <string>
#include <vector>

#include "orient/landscape.h"
#include "orient/metrics.h"
#include "orient/synth.h"
#include "orient/train.h"

namespace orient {

// All floating-point values are written with 9 significant digits.
inline constexpr int kCheckpointVersion = 1;

// JSON lines, one actor per line:
// {frame, id, box:{cx,cy,l,w,yaw_deg}, waypoints:[[x,y,yaw_deg]...],
//  features:[...], split}
void WriteDataset(const std::string& path, const Dataset& dataset);
Dataset ReadDataset(const std::string& path);

// Same shape as the dataset without features and split, plus score and an
// optional flip_prob.
void WriteDetections(const std::string& path,
                     std::span<const DetectionRecord> dets);
std::vector<DetectionRecord> ReadDetections(const std::string& path);

void WriteCheckpoint(const std::string& path, const ModelParams& params);
ModelParams ReadCheckpoint(const std::string& path);

void WriteLossHistory(const std::string& path,
                      std::span<const double> history);

void WriteReport(const std::string& path, const EvalReport& report);
EvalReport ReadReport(const std::string& path);
void WritePrCurve(const std::string& path, std::span<const PrPoint> curve);
void WriteFlipBins(const std::string& path, std::span<const FlipBin> bins);

void WriteLandscapeCsv(const std::string& path, const Landscape& landscape);
void WriteMinimaCsv(const std::string& path,
                    std::span<const GridPoint> minima);
// Plain (P2) graymap; darker is lower loss. Rows run from high c to low c.
void WriteLandscapePgm(const std::string& path, const Landscape& landscape);

// Fixed columns: AOS, AP, HOE, FOE-all, FOE-moving, l2-all, l2-moving and
// the mean flip probability. Missing values render as an em dash.
std::string FormatReportTable(std::span<const EvalReport> reports);

// Shortest decimal text that reads back as the 9-significant-digit value.
std::string FormatNumber(double v);
double Round9(double v);

// Whole-file helpers that throw Error(kIo) on failure.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace orient

#endif  // ORIENT_IO_H_
