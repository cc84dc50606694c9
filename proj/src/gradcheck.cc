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

#include <algorithm>
#include <cmath>
#include <random>

#include "orient/error.h"
#include "orient/geom.h"
#include "orient/train.h"

namespace orient {
namespace {

constexpr double kEps = 1e-5;
constexpr double kKinkMargin = 1e-3;
// Gradient components smaller than this are compared in absolute terms.
constexpr double kRelativeFloor = 1e-2;

HeadOutput RandomHead(const Method& method, int horizon, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pair(-1.5, 1.5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> logit(-3.0, 3.0);
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  HeadOutput head{method, horizon, {}};
  head.values.resize(method.HeadSize(horizon));
  switch (method.kind) {
    case MethodKind::kL1Sin:
      for (double& v : head.values) v = angle(rng);
      break;
    case MethodKind::kMultiBin:
      for (int t = 0; t < horizon; ++t) {
        for (int i = 0; i < method.bins; ++i) {
          const size_t base = (static_cast<size_t>(t) * method.bins + i) * 3;
          const double phi = angle(rng);
          const double r = radius(rng);
          head.values[base] = logit(rng);
          head.values[base + 1] = r * std::sin(phi);
          head.values[base + 2] = r * std::cos(phi);
        }
      }
      break;
    default:
      for (double& v : head.values) v = pair(rng);
      if (method.kind == MethodKind::kFlipAware) head.values.back() = logit(rng);
      break;
  }
  return head;
}

bool NearKink(const HeadOutput& head, std::span<const double> gt,
              const LossOptions& options) {
  const double beta = options.beta;
  auto near = [&](double x) {
    return std::abs(std::abs(x) - beta) < kKinkMargin;
  };
  for (int t = 0; t < head.horizon; ++t) {
    const auto p = head.step(t);
    const double th = gt[t];
    switch (head.method.kind) {
      case MethodKind::kSinCos2x:
        if (near(p[0] - std::sin(2 * th)) || near(p[1] - std::cos(2 * th))) {
          return true;
        }
        break;
      case MethodKind::kL1Sin:
        if (near(std::sin(p[0] - th))) return true;
        break;
      case MethodKind::kSinCos:
        if (near(p[0] - std::sin(th)) || near(p[1] - std::cos(th))) return true;
        break;
      case MethodKind::kFlipAware: {
        const double s = p[0];
        const double c = p[1];
        if (near(s - std::sin(th)) || near(c - std::cos(th)) ||
            near(-s - std::sin(th)) || near(-c - std::cos(th))) {
          return true;
        }
        if (!options.no_half) {
          const auto [s2, c2] = HalfParamsFromFull(s, c);
          if (near(s2 - std::sin(2 * th)) || near(c2 - std::cos(2 * th))) {
            return true;
          }
        }
        break;
      }
      case MethodKind::kMultiBin:
        break;
    }
  }
  if (head.method.kind == MethodKind::kFlipAware && !options.no_flip) {
    const size_t n = 2 * static_cast<size_t>(head.horizon);
    const auto pairs = std::span<const double>(head.values).first(n);
    const double full = LossFull(pairs, gt, beta);
    const double flipped = LossFlipped(pairs, gt, beta);
    if (std::abs(full - flipped) < kKinkMargin) return true;
  }
  return false;
}

}  // namespace

GradCheckReport GradCheck(const Method& method, int trials, double tolerance,
                          uint64_t seed, const LossOptions& options,
                          const GradientFn& gradient) {
  if (trials < 1) ThrowInvalid("gradcheck needs at least one trial");
  GradCheckReport report;
  report.method = method.Name();
  if (options.no_half) report.method += "-no_half";
  if (options.no_flip) report.method += "-no_flip";
  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
  std::uniform_int_distribution<int> horizon_dist(1, 3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const long max_draws = 100L * trials;
  long draws = 0;
  while (report.trials < trials && draws < max_draws) {
    ++draws;
    const int horizon = horizon_dist(rng);
    std::vector<double> gt(horizon);
    for (double& g : gt) g = angle(rng);
    HeadOutput head = RandomHead(method, horizon, rng);
    if (NearKink(head, gt, options)) {
      ++report.skipped;
      continue;
    }
    const HeadGradient analytic = gradient ? gradient(head, gt, options)
                                           : Gradient(head, gt, options);
    if (analytic.size() != head.values.size()) {
      ThrowInvalid("gradient has the wrong size");
    }
    for (size_t i = 0; i < head.values.size(); ++i) {
      const double saved = head.values[i];
      head.values[i] = saved + kEps;
      const double up = ComputeLoss(head, gt, options).total;
      head.values[i] = saved - kEps;
      const double down = ComputeLoss(head, gt, options).total;
      head.values[i] = saved;
      const double numeric = (up - down) / (2.0 * kEps);
      const double denom =
          std::max({std::abs(analytic[i]), std::abs(numeric), kRelativeFloor});
      report.max_rel_error =
          std::max(report.max_rel_error, std::abs(analytic[i] - numeric) / denom);
    }
    ++report.trials;
  }
  report.passed = report.trials == trials && report.max_rel_error < tolerance;
  return report;
}

}  // namespace orient
