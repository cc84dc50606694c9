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

#include "orient/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "orient/error.h"
#include "orient/geom.h"

namespace orient {
namespace {

constexpr double kMinRange = 5.0;   // m from the sensor
constexpr double kMaxRange = 50.0;
constexpr double kMinSeparation = 7.0;
constexpr int kSweeps = 6;          // 0.0 .. 0.5 s history
constexpr double kSweepDt = 0.1;
constexpr double kRingWidth = 0.75;  // m
// Returns per sweep at 10 m; scales with 1 / range.
constexpr double kReturnsAt10m = 200.0;
constexpr double kHistoryWeight = -0.5;
// Keep probability for returns on faces turned away from the sensor.
constexpr double kOccludedKeep = 0.15;
constexpr int kMinReturns = 1;
constexpr int kMaxReturns = 256;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void RequireFraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    ThrowInvalid(std::string(name) + " must lie in [0, 1]");
  }
}

struct OutlineSample {
  Vec2 point;   // local frame
  Vec2 normal;  // outward unit normal, local frame
};

// Point on the outline of a length x width rectangle at arc-length fraction
// u in [0, 1).
OutlineSample OutlinePoint(double length, double width, double u) {
  const double perimeter = 2.0 * (length + width);
  double d = u * perimeter;
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  if (d < length) return {{-hl + d, -hw}, {0.0, -1.0}};
  d -= length;
  if (d < width) return {{hl, -hw + d}, {1.0, 0.0}};
  d -= width;
  if (d < length) return {{hl - d, hw}, {0.0, 1.0}};
  d -= length;
  return {{-hl, hw - d}, {-1.0, 0.0}};
}

std::vector<double> Features(const SceneConfig& cfg, const OrientedBox& box,
                             Vec2 velocity, std::mt19937_64& rng) {
  const int rings = cfg.radial_bins;
  const int sectors = cfg.angular_bins;
  const int block = rings * sectors;
  std::vector<double> hist(block, 0.0);
  const double range = std::max(Norm({box.cx, box.cy}), 1.0);
  const int returns = std::clamp(
      static_cast<int>(std::lround(kReturnsAt10m * 10.0 / range)), kMinReturns,
      kMaxReturns);
  const double keep_front = 0.5 * (1.0 + cfg.front_signal);
  const double keep_rear = 0.5 * (1.0 - cfg.front_signal);
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  for (int sweep = 0; sweep < kSweeps; ++sweep) {
    // Older sweeps enter with negative weight, so a moving actor leaves a
    // trough behind it while a static one keeps a positive net occupancy.
    const double weight = sweep < kSweeps / 2 ? 1.0 : kHistoryWeight;
    const double tau = sweep * kSweepDt;
    const Vec2 past{box.cx - velocity.x * tau, box.cy - velocity.y * tau};
    int kept = 0;
    for (int attempt = 0; kept < returns && attempt < 64 * returns; ++attempt) {
      const OutlineSample o =
          OutlinePoint(box.length, box.width, Uniform(rng, 0.0, 1.0));
      const Vec2& p = o.point;
      const Vec2 world{past.x + c * p.x - s * p.y, past.y + s * p.x + c * p.y};
      const Vec2 normal{c * o.normal.x - s * o.normal.y,
                        s * o.normal.x + c * o.normal.y};
      // The sensor sits at the origin; faces turned away from it are mostly
      // self-occluded.
      const bool facing = normal.x * -world.x + normal.y * -world.y > 0.0;
      double keep = p.x > 0.0 ? keep_front : keep_rear;
      if (!facing) keep *= kOccludedKeep;
      if (Uniform(rng, 0.0, 1.0) >= keep) continue;
      ++kept;
      const Vec2 rel{world.x - box.cx, world.y - box.cy};
      const int ring = static_cast<int>(Norm(rel) / kRingWidth);
      if (ring >= rings) continue;
      const double angle = std::atan2(rel.y, rel.x) + kPi;
      const int sector =
          std::min(static_cast<int>(angle / (2.0 * kPi) * sectors), sectors - 1);
      hist[ring * sectors + sector] += weight;
    }
  }
  if (cfg.feature_noise > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.feature_noise);
    for (double& v : hist) v += noise(rng);
  }
  return hist;
}

std::vector<SynthActor> GenerateFrame(const SceneConfig& cfg, int frame) {
  std::mt19937_64 rng(SplitMix64(cfg.seed ^ SplitMix64(frame + 1)));
  std::vector<SynthActor> actors;
  std::vector<Vec2> placed;
  for (int i = 0; i < cfg.actors_per_frame; ++i) {
    Vec2 center;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double r = std::sqrt(Uniform(rng, kMinRange * kMinRange,
                                         kMaxRange * kMaxRange));
      const double phi = Uniform(rng, -kPi, kPi);
      center = {r * std::cos(phi), r * std::sin(phi)};
      const bool clear = std::none_of(placed.begin(), placed.end(), [&](Vec2 q) {
        return Norm(q - center) < kMinSeparation;
      });
      if (clear) break;
    }
    placed.push_back(center);

    SynthActor a;
    GtActor& gt = a.gt;
    gt.frame = frame;
    gt.id = static_cast<int64_t>(frame) * cfg.actors_per_frame + i;
    gt.box.cx = center.x;
    gt.box.cy = center.y;
    gt.box.length = Uniform(rng, cfg.length_min, cfg.length_max);
    gt.box.width = Uniform(rng, cfg.width_min, cfg.width_max);
    gt.box.yaw = WrapFull(Uniform(rng, -kPi, kPi));

    const double u = Uniform(rng, 0.0, 1.0);
    double speed = 0.0;
    double direction = 1.0;
    if (u >= cfg.static_fraction) {
      speed = Uniform(rng, cfg.speed_min, cfg.speed_max);
      if (u < cfg.static_fraction + cfg.reversing_fraction) direction = -1.0;
    }
    const Vec2 velocity{direction * speed * std::cos(gt.box.yaw),
                        direction * speed * std::sin(gt.box.yaw)};
    for (int k = 1; k <= cfg.horizon; ++k) {
      const double t = k * kWaypointDt;
      gt.waypoints.push_back({center.x + velocity.x * t, center.y + velocity.y * t});
      gt.yaw.push_back(gt.box.yaw);
    }
    a.features = Features(cfg, gt.box, velocity, rng);
    actors.push_back(std::move(a));
  }
  return actors;
}

}  // namespace

void SceneConfig::Validate() const {
  if (actors_per_frame < 1) ThrowInvalid("actors_per_frame must be >= 1");
  if (frames < 1) ThrowInvalid("frames must be >= 1");
  if (horizon < 1) ThrowInvalid("horizon must be >= 1");
  if (radial_bins < 1 || angular_bins < 1) {
    ThrowInvalid("feature bins must be >= 1");
  }
  RequireFraction(static_fraction, "static_fraction");
  RequireFraction(reversing_fraction, "reversing_fraction");
  RequireFraction(front_signal, "front_signal");
  if (static_fraction + reversing_fraction > 1.0 + 1e-12) {
    ThrowInvalid("static_fraction + reversing_fraction exceeds 1");
  }
  if (!(speed_min > kMovingSpeedThreshold) || speed_max < speed_min) {
    ThrowInvalid("speed range must satisfy 0.5 < speed_min <= speed_max");
  }
  if (!(length_min > 0.0) || length_max < length_min || !(width_min > 0.0) ||
      width_max < width_min) {
    ThrowInvalid("box dimension ranges must be positive and ordered");
  }
  if (!(feature_noise >= 0.0) || !std::isfinite(feature_noise)) {
    ThrowInvalid("feature_noise must be >= 0");
  }
}

Dataset GenerateDataset(const SceneConfig& cfg) {
  cfg.Validate();
  const int train_frames =
      cfg.frames == 1 ? 1
                      : std::clamp(static_cast<int>(std::lround(0.8 * cfg.frames)),
                                   1, cfg.frames - 1);
  Dataset out;
  for (int f = 0; f < cfg.frames; ++f) {
    std::vector<SynthActor> actors = GenerateFrame(cfg, f);
    auto& dst = f < train_frames ? out.train : out.val;
    std::move(actors.begin(), actors.end(), std::back_inserter(dst));
  }
  return out;
}

std::vector<DetectionRecord> PerturbDetections(std::span<const GtActor> gts,
                                               const PerturbConfig& cfg) {
  RequireFraction(cfg.flip_fraction, "flip_fraction");
  RequireFraction(cfg.fn_rate, "fn_rate");
  if (!(cfg.fp_rate >= 0.0) || !(cfg.pos_sigma >= 0.0) ||
      !(cfg.yaw_sigma >= 0.0)) {
    ThrowInvalid("noise levels and fp_rate must be >= 0");
  }
  std::mt19937_64 rng(SplitMix64(cfg.seed));
  const size_t n = gts.size();

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  const size_t dropped = static_cast<size_t>(std::lround(cfg.fn_rate * n));
  std::vector<size_t> kept(order.begin() + dropped, order.end());
  std::sort(kept.begin(), kept.end());
  std::vector<size_t> flip_order = kept;
  std::shuffle(flip_order.begin(), flip_order.end(), rng);
  const size_t flips =
      static_cast<size_t>(std::lround(cfg.flip_fraction * kept.size()));
  std::vector<bool> flipped(n, false);
  for (size_t i = 0; i < flips; ++i) flipped[flip_order[i]] = true;

  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<DetectionRecord> dets;
  for (size_t g : kept) {
    const GtActor& gt = gts[g];
    DetectionRecord d;
    d.frame = gt.frame;
    d.id = gt.id;
    d.box = gt.box;
    const double dx = cfg.pos_sigma * unit(rng);
    const double dy = cfg.pos_sigma * unit(rng);
    const double dyaw = cfg.yaw_sigma * unit(rng);
    d.box.cx += dx;
    d.box.cy += dy;
    const double flip = flipped[g] ? kPi : 0.0;
    d.box.yaw = WrapFull(gt.box.yaw + dyaw + flip);
    for (double y : gt.yaw) d.yaw.push_back(WrapFull(y + dyaw + flip));
    for (const Vec2& w : gt.waypoints) d.waypoints.push_back({w.x + dx, w.y + dy});
    const double perturbation = std::hypot(dx, dy) + std::abs(dyaw);
    d.score = 0.5 + 0.5 * std::exp(-perturbation) * Uniform(rng, 0.8, 1.0);
    if (cfg.emit_flip_prob) {
      d.flip_prob = flipped[g] ? Uniform(rng, 0.3, 0.5) : Uniform(rng, 0.0, 0.2);
    }
    dets.push_back(std::move(d));
  }

  const size_t num_fp = static_cast<size_t>(std::lround(cfg.fp_rate * n));
  for (size_t i = 0; i < num_fp && n > 0; ++i) {
    const GtActor& anchor = gts[std::uniform_int_distribution<size_t>(0, n - 1)(rng)];
    DetectionRecord d;
    d.frame = anchor.frame;
    d.id = -1 - static_cast<int64_t>(i);
    d.box = {Uniform(rng, -60.0, 60.0), Uniform(rng, -60.0, 60.0),
             Uniform(rng, 3.8, 5.2), Uniform(rng, 1.7, 2.1),
             Uniform(rng, -kPi, kPi)};
    d.yaw.assign(anchor.yaw.size(), d.box.yaw);
    d.waypoints.assign(anchor.waypoints.size(), {d.box.cx, d.box.cy});
    d.score = Uniform(rng, 0.0, 0.6);
    if (cfg.emit_flip_prob) d.flip_prob = Uniform(rng, 0.0, 0.5);
    dets.push_back(std::move(d));
  }
  return dets;
}

}  // namespace orient
