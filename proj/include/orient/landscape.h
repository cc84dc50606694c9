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

#ifndef ORIENT_LANDSCAPE_H_
#define ORIENT_LANDSCAPE_H_

#include <string>
#include <string_view>
#include <vector>

#include "orient/losses.h"

namespace orient {

enum class LandscapeLoss { kFull, kFullPlusHalf, kMinFullFlipped, kMinPlusHalf };

// full | full_plus_half | min_full_flipped | min_plus_half
LandscapeLoss ParseLandscapeLoss(std::string_view name);
std::string LandscapeLossName(LandscapeLoss loss);

struct LandscapeSpec {
  LandscapeLoss loss = LandscapeLoss::kFull;
  double gt_yaw = 0.0;  // radians; 0 is (sin, cos) = (0, 1)
  double lo = -1.5;
  double hi = 1.5;
  double step = 0.01;
  double beta = kDefaultSmoothL1Beta;

  void Validate() const;
};

// Loss of a single (sin, cos) prediction, without the flip cross-entropy.
double LandscapeValue(LandscapeLoss loss, double s, double c, double gt_yaw,
                      double beta);

struct GridPoint {
  double s = 0.0;
  double c = 0.0;
  double loss = 0.0;
};

// Square grid; the same axis is used for s and c.
struct Landscape {
  LandscapeSpec spec;
  std::vector<double> axis;
  std::vector<double> values;  // values[ci * n + si]

  int size() const { return static_cast<int>(axis.size()); }
  double at(int si, int ci) const { return values[ci * axis.size() + si]; }
  // Nearest grid value to (s, c).
  double ValueNear(double s, double c) const;
};

Landscape ComputeLandscape(const LandscapeSpec& spec);

// Points strictly below every existing 8-neighbour.
std::vector<GridPoint> LocalMinima(const Landscape& landscape);
// Points within `tol` of the smallest value.
std::vector<GridPoint> GlobalMinima(const Landscape& landscape,
                                    double tol = 1e-12);

}  // namespace orient

#endif  // ORIENT_LANDSCAPE_H_
