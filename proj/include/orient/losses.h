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

#ifndef ORIENT_LOSSES_H_
#define ORIENT_LOSSES_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orient {

// Width of the quadratic zone of smooth-L1. Kept narrow so that
// L_full + L_half retains a local minimum at the flipped target; at 1.0 that
// minimum disappears.
inline constexpr double kDefaultSmoothL1Beta = 0.01;

enum class MethodKind { kSinCos2x, kL1Sin, kSinCos, kMultiBin, kFlipAware };

// An orientation estimation method and its head layout.
struct Method {
  MethodKind kind = MethodKind::kFlipAware;
  int bins = 0;  // MultiBin only.

  static Method SinCos2x() { return {MethodKind::kSinCos2x, 0}; }
  static Method L1Sin() { return {MethodKind::kL1Sin, 0}; }
  static Method SinCos() { return {MethodKind::kSinCos, 0}; }
  static Method MultiBin(int n);
  static Method FlipAware() { return {MethodKind::kFlipAware, 0}; }

  // Accepts sin_cos_2x, l1_sin, sin_cos, multibin_<n>, flip_aware.
  static Method Parse(std::string_view name);
  std::string Name() const;

  bool full_range() const {
    return kind != MethodKind::kSinCos2x && kind != MethodKind::kL1Sin;
  }
  int PerStepArity() const;
  // Raw outputs for a horizon of `horizon` steps, including the flip logit.
  int HeadSize(int horizon) const;

  friend bool operator==(const Method&, const Method&) = default;
};

// Raw head outputs for one actor, step-major. Step t occupies
// values[t * PerStepArity() .. (t + 1) * PerStepArity()); the FlipAware flip
// logit is the last value. MultiBin steps store (logit, rs, rc) per bin.
struct HeadOutput {
  Method method;
  int horizon = 0;
  std::vector<double> values;

  std::span<const double> step(int t) const;
  double flip_logit() const { return values.back(); }
};

// Gradient of a loss w.r.t. every raw head output; same layout as the head.
using HeadGradient = std::vector<double>;

struct LossOptions {
  double beta = kDefaultSmoothL1Beta;
  // Flip-aware ablations. no_half drops the half-range term; no_flip trains
  // L_full + L_half and ignores the flip logit.
  bool no_half = false;
  bool no_flip = false;
};

struct LossResult {
  double total = 0.0;
  std::map<std::string, double> components;
  std::optional<int> flip_label;
};

double SmoothL1(double x, double beta = kDefaultSmoothL1Beta);
// Derivative of SmoothL1; right-derivative at the kinks.
double SmoothL1Grad(double x, double beta = kDefaultSmoothL1Beta);

// (sin 2t, cos 2t) from an unnormalized (sin t, cos t) pair.
std::pair<double, double> HalfParamsFromFull(double s, double c);

// Per-step losses on interleaved pairs [p0, q0, p1, q1, ...] against the
// ground-truth yaw sequence (radians). When `grad` is non-null the gradient
// w.r.t. the pairs is accumulated into it (it must be pairs.size() long).
double LossHalf(std::span<const double> sin2_cos2, std::span<const double> gt,
                double beta, std::span<double> grad = {});
double LossFull(std::span<const double> sin_cos, std::span<const double> gt,
                double beta, std::span<double> grad = {});
double LossFlipped(std::span<const double> sin_cos, std::span<const double> gt,
                   double beta, std::span<double> grad = {});

// L_half evaluated on a full-range (sin, cos) head through the double-angle
// identities.
double LossHalfFromFull(std::span<const double> sin_cos,
                        std::span<const double> gt, double beta,
                        std::span<double> grad = {});

// 1 iff l_full > l_flipped (ties resolve to 0).
int FlipLabel(double l_full, double l_flipped);

// Binary cross-entropy of sigmoid(logit) against `label`, in logit form.
double BinaryCrossEntropyWithLogit(double logit, int label);
double Sigmoid(double x);

// Bin centers (radians): n=2 -> {0, 180}, n=4 -> {-90, 0, 90, 180} degrees.
std::vector<double> MultiBinCenters(int n);
// Half of the angular coverage of one bin (bins overlap by 20%).
double MultiBinHalfWidth(int n);

// Total loss of `head` against `gt` (one yaw per step). Fills `grad` with
// the exact gradient when non-null.
LossResult ComputeLoss(const HeadOutput& head, std::span<const double> gt,
                       const LossOptions& options = {},
                       HeadGradient* grad = nullptr);

HeadGradient Gradient(const HeadOutput& head, std::span<const double> gt,
                      const LossOptions& options = {});

struct DecodedOrientation {
  std::vector<double> yaw;  // radians, one per step
  std::optional<double> flip_prob;
};

// Highest-probability orientation per step. Throws if a (sin, cos) pair is
// all zero.
DecodedOrientation Decode(const HeadOutput& head,
                          const LossOptions& options = {});

// Flips every step by 180 degrees when flip_prob > 0.5 and replaces
// flip_prob with 1 - flip_prob.
DecodedOrientation PostprocessFlip(DecodedOrientation decoded);

}  // namespace orient

#endif  // ORIENT_LOSSES_H_
