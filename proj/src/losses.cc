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

#include "orient/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orient/error.h"
#include "orient/geom.h"

namespace orient {
namespace {

void CheckPairs(std::span<const double> pairs, std::span<const double> gt,
                std::span<double> grad) {
  if (pairs.size() != 2 * gt.size()) {
    ThrowInvalid("pair sequence length " + std::to_string(pairs.size()) +
                 " does not match horizon " + std::to_string(gt.size()));
  }
  if (!grad.empty() && grad.size() != pairs.size()) {
    ThrowInvalid("gradient buffer has wrong size");
  }
}

void CheckHead(const HeadOutput& head, std::span<const double> gt) {
  if (head.horizon < 1) ThrowInvalid("horizon must be >= 1");
  if (static_cast<int>(gt.size()) != head.horizon) {
    ThrowInvalid("ground-truth length " + std::to_string(gt.size()) +
                 " does not match horizon " + std::to_string(head.horizon));
  }
  if (static_cast<int>(head.values.size()) !=
      head.method.HeadSize(head.horizon)) {
    ThrowInvalid("head for " + head.method.Name() + " has " +
                 std::to_string(head.values.size()) + " values, expected " +
                 std::to_string(head.method.HeadSize(head.horizon)));
  }
}

// Sum over steps of l1(sign * p - target_sin) + l1(sign * q - target_cos),
// where the targets are sin/cos of (multiplier * gt).
double PairLoss(std::span<const double> pairs, std::span<const double> gt,
                double beta, double sign, double multiplier,
                std::span<double> grad) {
  CheckPairs(pairs, gt, grad);
  double total = 0.0;
  for (size_t t = 0; t < gt.size(); ++t) {
    const double ds = sign * pairs[2 * t] - std::sin(multiplier * gt[t]);
    const double dc = sign * pairs[2 * t + 1] - std::cos(multiplier * gt[t]);
    total += SmoothL1(ds, beta) + SmoothL1(dc, beta);
    if (!grad.empty()) {
      grad[2 * t] += sign * SmoothL1Grad(ds, beta);
      grad[2 * t + 1] += sign * SmoothL1Grad(dc, beta);
    }
  }
  return total;
}

double LogSumExp(std::span<const double> x) {
  const double m = *std::max_element(x.begin(), x.end());
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - m);
  return m + std::log(acc);
}

int NearestBin(const std::vector<double>& centers, double angle) {
  int best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < centers.size(); ++i) {
    const double err = FullRangeError(angle, centers[i]);
    if (err < best_err) {
      best_err = err;
      best = static_cast<int>(i);
    }
  }
  return best;
}

double LossL1SinImpl(const HeadOutput& head, std::span<const double> gt,
                     double beta, HeadGradient* grad) {
  double total = 0.0;
  for (int t = 0; t < head.horizon; ++t) {
    const double diff = head.values[t] - gt[t];
    const double x = std::sin(diff);
    total += SmoothL1(x, beta);
    if (grad) (*grad)[t] += SmoothL1Grad(x, beta) * std::cos(diff);
  }
  return total;
}

void LossMultiBinImpl(const HeadOutput& head, std::span<const double> gt,
                      HeadGradient* grad, double* conf_out, double* res_out) {
  const int n = head.method.bins;
  const std::vector<double> centers = MultiBinCenters(n);
  const double half_width = MultiBinHalfWidth(n);
  std::vector<double> logits(n);
  double conf = 0.0;
  double res = 0.0;
  for (int t = 0; t < head.horizon; ++t) {
    const std::span<const double> step = head.step(t);
    for (int i = 0; i < n; ++i) logits[i] = step[3 * i];
    const int positive = NearestBin(centers, gt[t]);
    const double lse = LogSumExp(logits);
    conf += lse - logits[positive];
    const size_t base = static_cast<size_t>(t) * 3 * n;
    for (int i = 0; i < n; ++i) {
      if (grad) {
        (*grad)[base + 3 * i] +=
            std::exp(logits[i] - lse) - (i == positive ? 1.0 : 0.0);
      }
      if (FullRangeError(gt[t], centers[i]) > half_width) continue;
      const double rs = step[3 * i + 1];
      const double rc = step[3 * i + 2];
      const double delta = gt[t] - centers[i] - std::atan2(rs, rc);
      res += 1.0 - std::cos(delta);
      const double r2 = rs * rs + rc * rc;
      if (grad && r2 > 0.0) {
        // d/dphi (1 - cos(delta)) = -sin(delta), phi = atan2(rs, rc).
        const double dphi = -std::sin(delta);
        (*grad)[base + 3 * i + 1] += dphi * rc / r2;
        (*grad)[base + 3 * i + 2] += dphi * -rs / r2;
      }
    }
  }
  *conf_out = conf;
  *res_out = res;
}

}  // namespace

Method Method::MultiBin(int n) {
  if (n < 2) ThrowInvalid("MultiBin needs at least 2 bins");
  return {MethodKind::kMultiBin, n};
}

Method Method::Parse(std::string_view name) {
  if (name == "sin_cos_2x") return SinCos2x();
  if (name == "l1_sin") return L1Sin();
  if (name == "sin_cos") return SinCos();
  if (name == "flip_aware") return FlipAware();
  constexpr std::string_view kMultiBin = "multibin_";
  if (name.starts_with(kMultiBin)) {
    const std::string digits(name.substr(kMultiBin.size()));
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; }) &&
        digits.size() < 4) {
      return MultiBin(std::stoi(digits));
    }
  }
  ThrowInvalid("unknown method '" + std::string(name) + "'");
}

std::string Method::Name() const {
  switch (kind) {
    case MethodKind::kSinCos2x:
      return "sin_cos_2x";
    case MethodKind::kL1Sin:
      return "l1_sin";
    case MethodKind::kSinCos:
      return "sin_cos";
    case MethodKind::kMultiBin:
      return "multibin_" + std::to_string(bins);
    case MethodKind::kFlipAware:
      return "flip_aware";
  }
  return "unknown";
}

int Method::PerStepArity() const {
  switch (kind) {
    case MethodKind::kL1Sin:
      return 1;
    case MethodKind::kMultiBin:
      return 3 * bins;
    default:
      return 2;
  }
}

int Method::HeadSize(int horizon) const {
  return PerStepArity() * horizon + (kind == MethodKind::kFlipAware ? 1 : 0);
}

std::span<const double> HeadOutput::step(int t) const {
  const size_t arity = method.PerStepArity();
  return std::span<const double>(values).subspan(t * arity, arity);
}

double SmoothL1(double x, double beta) {
  const double a = std::abs(x);
  return a < beta ? 0.5 * x * x / beta : a - 0.5 * beta;
}

double SmoothL1Grad(double x, double beta) {
  if (x >= beta) return 1.0;
  if (x < -beta) return -1.0;
  return x / beta;
}

std::pair<double, double> HalfParamsFromFull(double s, double c) {
  return {2.0 * s * c, c * c - s * s};
}

double LossHalf(std::span<const double> sin2_cos2, std::span<const double> gt,
                double beta, std::span<double> grad) {
  return PairLoss(sin2_cos2, gt, beta, 1.0, 2.0, grad);
}

double LossFull(std::span<const double> sin_cos, std::span<const double> gt,
                double beta, std::span<double> grad) {
  return PairLoss(sin_cos, gt, beta, 1.0, 1.0, grad);
}

double LossFlipped(std::span<const double> sin_cos, std::span<const double> gt,
                   double beta, std::span<double> grad) {
  return PairLoss(sin_cos, gt, beta, -1.0, 1.0, grad);
}

double LossHalfFromFull(std::span<const double> sin_cos,
                        std::span<const double> gt, double beta,
                        std::span<double> grad) {
  CheckPairs(sin_cos, gt, grad);
  std::vector<double> half(sin_cos.size());
  for (size_t t = 0; t < gt.size(); ++t) {
    const auto [s2, c2] = HalfParamsFromFull(sin_cos[2 * t], sin_cos[2 * t + 1]);
    half[2 * t] = s2;
    half[2 * t + 1] = c2;
  }
  if (grad.empty()) return LossHalf(half, gt, beta);
  std::vector<double> half_grad(half.size(), 0.0);
  const double total = LossHalf(half, gt, beta, half_grad);
  for (size_t t = 0; t < gt.size(); ++t) {
    const double s = sin_cos[2 * t];
    const double c = sin_cos[2 * t + 1];
    const double g2 = half_grad[2 * t];
    const double gc2 = half_grad[2 * t + 1];
    grad[2 * t] += 2.0 * c * g2 - 2.0 * s * gc2;
    grad[2 * t + 1] += 2.0 * s * g2 + 2.0 * c * gc2;
  }
  return total;
}

int FlipLabel(double l_full, double l_flipped) {
  return l_full > l_flipped ? 1 : 0;
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double BinaryCrossEntropyWithLogit(double logit, int label) {
  return std::max(logit, 0.0) - logit * label +
         std::log1p(std::exp(-std::abs(logit)));
}

std::vector<double> MultiBinCenters(int n) {
  if (n < 2) ThrowInvalid("MultiBin needs at least 2 bins");
  std::vector<double> centers(n);
  for (int i = 0; i < n; ++i) {
    centers[i] = WrapFull(-kPi + 2.0 * kPi * (i + 1) / n);
  }
  return centers;
}

double MultiBinHalfWidth(int n) { return 0.5 * 1.2 * 2.0 * kPi / n; }

LossResult ComputeLoss(const HeadOutput& head, std::span<const double> gt,
                       const LossOptions& options, HeadGradient* grad) {
  CheckHead(head, gt);
  const bool is_flip_aware = head.method.kind == MethodKind::kFlipAware;
  if ((options.no_half || options.no_flip) && !is_flip_aware) {
    ThrowInvalid("no_half/no_flip apply only to flip_aware");
  }
  if (options.no_half && options.no_flip) {
    ThrowInvalid("no_half and no_flip are mutually exclusive");
  }
  if (!(options.beta > 0.0)) ThrowInvalid("smooth-L1 beta must be positive");
  if (grad) grad->assign(head.values.size(), 0.0);

  const double beta = options.beta;
  LossResult result;
  switch (head.method.kind) {
    case MethodKind::kSinCos2x: {
      std::span<double> g = grad ? std::span<double>(*grad) : std::span<double>();
      result.total = LossHalf(head.values, gt, beta, g);
      result.components["half"] = result.total;
      break;
    }
    case MethodKind::kL1Sin:
      result.total = LossL1SinImpl(head, gt, beta, grad);
      result.components["l1_sin"] = result.total;
      break;
    case MethodKind::kSinCos: {
      std::span<double> g = grad ? std::span<double>(*grad) : std::span<double>();
      result.total = LossFull(head.values, gt, beta, g);
      result.components["full"] = result.total;
      break;
    }
    case MethodKind::kMultiBin: {
      double conf = 0.0;
      double res = 0.0;
      LossMultiBinImpl(head, gt, grad, &conf, &res);
      result.components["multibin_conf"] = conf;
      result.components["multibin_res"] = res;
      result.total = conf + res;
      break;
    }
    case MethodKind::kFlipAware: {
      const size_t n_pairs = 2 * static_cast<size_t>(head.horizon);
      const std::span<const double> pairs =
          std::span<const double>(head.values).first(n_pairs);
      std::vector<double> g_half, g_full, g_flipped;
      if (grad) {
        g_half.assign(n_pairs, 0.0);
        g_full.assign(n_pairs, 0.0);
        g_flipped.assign(n_pairs, 0.0);
      }
      const double half =
          options.no_half ? 0.0 : LossHalfFromFull(pairs, gt, beta, g_half);
      const double full = LossFull(pairs, gt, beta, g_full);
      const double flipped = LossFlipped(pairs, gt, beta, g_flipped);
      if (!options.no_half) result.components["half"] = half;
      result.components["full"] = full;
      result.components["flipped"] = flipped;
      if (options.no_flip) {
        result.total = half + full;
        if (grad) {
          for (size_t i = 0; i < n_pairs; ++i) {
            (*grad)[i] = g_half[i] + g_full[i];
          }
        }
        break;
      }
      const int label = FlipLabel(full, flipped);
      const double z = head.flip_logit();
      const double bce = BinaryCrossEntropyWithLogit(z, label);
      result.flip_label = label;
      result.components["bce"] = bce;
      result.total = half + std::min(full, flipped) + bce;
      if (grad) {
        // Ties take the L_full branch; the label is held constant.
        const std::vector<double>& g_min = label == 1 ? g_flipped : g_full;
        for (size_t i = 0; i < n_pairs; ++i) {
          (*grad)[i] = g_half[i] + g_min[i];
        }
        grad->back() = Sigmoid(z) - label;
      }
      break;
    }
  }
  return result;
}

HeadGradient Gradient(const HeadOutput& head, std::span<const double> gt,
                      const LossOptions& options) {
  HeadGradient grad;
  ComputeLoss(head, gt, options, &grad);
  return grad;
}

DecodedOrientation Decode(const HeadOutput& head, const LossOptions& options) {
  if (head.horizon < 1 || static_cast<int>(head.values.size()) !=
                              head.method.HeadSize(head.horizon)) {
    ThrowInvalid("malformed head for " + head.method.Name());
  }
  DecodedOrientation out;
  out.yaw.reserve(head.horizon);
  auto direction = [](double s, double c) {
    if (s == 0.0 && c == 0.0) {
      ThrowInvalid("cannot decode an all-zero (sin, cos) pair");
    }
    return std::atan2(s, c);
  };
  switch (head.method.kind) {
    case MethodKind::kSinCos2x:
      for (int t = 0; t < head.horizon; ++t) {
        const auto p = head.step(t);
        out.yaw.push_back(WrapHalf(0.5 * direction(p[0], p[1])));
      }
      break;
    case MethodKind::kL1Sin:
      for (int t = 0; t < head.horizon; ++t) {
        out.yaw.push_back(WrapHalf(head.values[t]));
      }
      break;
    case MethodKind::kSinCos:
    case MethodKind::kFlipAware:
      for (int t = 0; t < head.horizon; ++t) {
        const auto p = head.step(t);
        out.yaw.push_back(WrapFull(direction(p[0], p[1])));
      }
      if (head.method.kind == MethodKind::kFlipAware && !options.no_flip) {
        out.flip_prob = Sigmoid(head.flip_logit());
      }
      break;
    case MethodKind::kMultiBin: {
      const int n = head.method.bins;
      const std::vector<double> centers = MultiBinCenters(n);
      std::vector<double> logits(n);
      for (int t = 0; t < head.horizon; ++t) {
        const auto step = head.step(t);
        for (int i = 0; i < n; ++i) logits[i] = step[3 * i];
        const int best = static_cast<int>(
            std::max_element(logits.begin(), logits.end()) - logits.begin());
        out.yaw.push_back(WrapFull(
            centers[best] + std::atan2(step[3 * best + 1], step[3 * best + 2])));
        if (t == 0) {
          // Mass of the bin opposite the argmax, renormalized over the pair.
          int opposite = best == 0 ? 1 : 0;
          double nearest = std::numeric_limits<double>::infinity();
          for (int i = 0; i < n; ++i) {
            if (i == best) continue;
            const double err = FullRangeError(centers[best] + kPi, centers[i]);
            if (err < nearest) {
              nearest = err;
              opposite = i;
            }
          }
          out.flip_prob = Sigmoid(logits[opposite] - logits[best]);
        }
      }
      break;
    }
  }
  return out;
}

DecodedOrientation PostprocessFlip(DecodedOrientation decoded) {
  if (decoded.flip_prob && *decoded.flip_prob > 0.5) {
    for (double& yaw : decoded.yaw) yaw = WrapFull(yaw + kPi);
    decoded.flip_prob = 1.0 - *decoded.flip_prob;
  }
  return decoded;
}

}  // namespace orient
