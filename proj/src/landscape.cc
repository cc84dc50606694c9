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

#include "orient/landscape.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "orient/error.h"

namespace orient {
namespace {

constexpr std::array<std::pair<LandscapeLoss, const char*>, 4> kNames = {{
    {LandscapeLoss::kFull, "full"},
    {LandscapeLoss::kFullPlusHalf, "full_plus_half"},
    {LandscapeLoss::kMinFullFlipped, "min_full_flipped"},
    {LandscapeLoss::kMinPlusHalf, "min_plus_half"},
}};

// Grid coordinates are snapped so that 0 and +-1 land exactly on the axis.
double Snap(double v) { return std::round(v * 1e9) / 1e9; }

int AxisIndex(const LandscapeSpec& spec, double v) {
  return static_cast<int>(std::lround((v - spec.lo) / spec.step));
}

}  // namespace

LandscapeLoss ParseLandscapeLoss(std::string_view name) {
  for (const auto& [loss, n] : kNames) {
    if (name == n) return loss;
  }
  ThrowInvalid("unknown landscape loss '" + std::string(name) +
               "' (expected full, full_plus_half, min_full_flipped or "
               "min_plus_half)");
}

std::string LandscapeLossName(LandscapeLoss loss) {
  for (const auto& [l, n] : kNames) {
    if (l == loss) return n;
  }
  return "unknown";
}

void LandscapeSpec::Validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    ThrowInvalid("landscape range must satisfy lo < hi");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    ThrowInvalid("landscape step must be > 0");
  }
  if ((hi - lo) / step > 10000.0) ThrowInvalid("landscape grid too large");
  if (!std::isfinite(gt_yaw)) ThrowInvalid("gt yaw must be finite");
  if (!(beta > 0.0)) ThrowInvalid("beta must be > 0");
}

double LandscapeValue(LandscapeLoss loss, double s, double c, double gt_yaw,
                      double beta) {
  const std::array<double, 2> pair = {s, c};
  const std::array<double, 1> gt = {gt_yaw};
  switch (loss) {
    case LandscapeLoss::kFull:
      return LossFull(pair, gt, beta);
    case LandscapeLoss::kFullPlusHalf:
      return LossFull(pair, gt, beta) + LossHalfFromFull(pair, gt, beta);
    case LandscapeLoss::kMinFullFlipped:
      return std::min(LossFull(pair, gt, beta), LossFlipped(pair, gt, beta));
    case LandscapeLoss::kMinPlusHalf:
      return std::min(LossFull(pair, gt, beta), LossFlipped(pair, gt, beta)) +
             LossHalfFromFull(pair, gt, beta);
  }
  return 0.0;
}

double Landscape::ValueNear(double s, double c) const {
  const int si = std::clamp(AxisIndex(spec, s), 0, size() - 1);
  const int ci = std::clamp(AxisIndex(spec, c), 0, size() - 1);
  return at(si, ci);
}

Landscape ComputeLandscape(const LandscapeSpec& spec) {
  spec.Validate();
  Landscape out;
  out.spec = spec;
  const int n = static_cast<int>(std::floor((spec.hi - spec.lo) / spec.step +
                                            1e-9)) + 1;
  out.axis.reserve(n);
  for (int i = 0; i < n; ++i) out.axis.push_back(Snap(spec.lo + i * spec.step));
  out.values.resize(static_cast<size_t>(n) * n);
  for (int ci = 0; ci < n; ++ci) {
    for (int si = 0; si < n; ++si) {
      out.values[static_cast<size_t>(ci) * n + si] = LandscapeValue(
          spec.loss, out.axis[si], out.axis[ci], spec.gt_yaw, spec.beta);
    }
  }
  return out;
}

std::vector<GridPoint> LocalMinima(const Landscape& landscape) {
  std::vector<GridPoint> minima;
  const int n = landscape.size();
  for (int ci = 0; ci < n; ++ci) {
    for (int si = 0; si < n; ++si) {
      const double v = landscape.at(si, ci);
      bool is_min = true;
      for (int dc = -1; dc <= 1 && is_min; ++dc) {
        for (int ds = -1; ds <= 1; ++ds) {
          if (ds == 0 && dc == 0) continue;
          const int s2 = si + ds;
          const int c2 = ci + dc;
          if (s2 < 0 || c2 < 0 || s2 >= n || c2 >= n) continue;
          if (!(v < landscape.at(s2, c2))) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) minima.push_back({landscape.axis[si], landscape.axis[ci], v});
    }
  }
  return minima;
}

std::vector<GridPoint> GlobalMinima(const Landscape& landscape, double tol) {
  const double best =
      *std::min_element(landscape.values.begin(), landscape.values.end());
  std::vector<GridPoint> minima;
  const int n = landscape.size();
  for (int ci = 0; ci < n; ++ci) {
    for (int si = 0; si < n; ++si) {
      const double v = landscape.at(si, ci);
      if (v - best <= tol) {
        minima.push_back({landscape.axis[si], landscape.axis[ci], v});
      }
    }
  }
  return minima;
}

}  // namespace orient
