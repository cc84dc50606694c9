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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Measured values are printed alongside
// so a failure can be read without rerunning.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orient/geom.h"
#include "orient/io.h"
#include "orient/landscape.h"
#include "orient/losses.h"
#include "orient/metrics.h"
#include "orient/orient_c.h"
#include "orient/synth.h"
#include "orient/train.h"

namespace orient {
namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the reasons a criterion failed.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && std::find(failures_.begin(), failures_.end(), what) ==
                   failures_.end()) {
      failures_.push_back(what);
    }
  }
  bool ok() const { return failures_.empty(); }
  std::string Failures() const {
    std::string out;
    for (const std::string& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

bool Report(int number, const std::string& title, const Check& check,
            const std::string& detail) {
  std::printf("%s criterion %d: %s | %s%s%s\n", check.ok() ? "PASS" : "FAIL",
              number, title.c_str(), detail.c_str(),
              check.ok() ? "" : " | failed: ", check.Failures().c_str());
  std::fflush(stdout);
  return check.ok();
}

// ---------------------------------------------------------------------------
// 1. Analytic gradients against central differences.

bool Criterion1() {
  const auto start = Clock::now();
  Check check;
  std::ostringstream detail;
  const std::vector<Method> methods = {Method::SinCos2x(), Method::L1Sin(),
                                       Method::SinCos(), Method::MultiBin(2),
                                       Method::MultiBin(4), Method::FlipAware()};
  for (const Method& m : methods) {
    const GradCheckReport r = GradCheck(m, 100, 1e-4, /*seed=*/2024);
    detail << m.Name() << " max_rel=" << Fmt(r.max_rel_error, 2) << " ";
    check.Expect(r.trials == 100, m.Name() + " ran " + std::to_string(r.trials) +
                                      " trials");
    check.Expect(r.passed, m.Name() + " max relative error " +
                               Fmt(r.max_rel_error));
  }
  const double elapsed = Seconds(start);
  detail << "time=" << Fmt(elapsed, 3) << "s";
  check.Expect(elapsed < 10.0, "runtime " + Fmt(elapsed) + " s >= 10 s");
  return Report(1, "gradient oracle, 100 trials per method", check,
                detail.str());
}

// ---------------------------------------------------------------------------
// 2. Loss landscapes over (s, c) for ground truth (0, 1).

bool WithinCell(const GridPoint& p, double s, double c, double step) {
  return std::abs(p.s - s) <= step + 1e-9 && std::abs(p.c - c) <= step + 1e-9;
}

bool Criterion2() {
  Check check;
  std::ostringstream detail;
  const double step = 0.01;
  auto compute = [&](LandscapeLoss loss, double* seconds) {
    LandscapeSpec spec;
    spec.loss = loss;
    const auto start = Clock::now();
    Landscape l = ComputeLandscape(spec);
    *seconds = Seconds(start);
    check.Expect(*seconds < 5.0, LandscapeLossName(loss) + " took " +
                                     Fmt(*seconds) + " s");
    return l;
  };
  double t = 0.0;

  const Landscape full = compute(LandscapeLoss::kFull, &t);
  const std::vector<GridPoint> full_min = LocalMinima(full);
  check.Expect(full_min.size() == 1 && WithinCell(full_min[0], 0, 1, step),
               "(a) full minima != {(0,1)}");
  detail << "(a) " << full_min.size() << " min ";

  const Landscape fph = compute(LandscapeLoss::kFullPlusHalf, &t);
  const std::vector<GridPoint> fph_min = LocalMinima(fph);
  bool has_top = false, has_bottom = false;
  for (const GridPoint& p : fph_min) {
    has_top |= WithinCell(p, 0, 1, step);
    has_bottom |= WithinCell(p, 0, -1, step);
  }
  check.Expect(fph_min.size() == 2 && has_top && has_bottom,
               "(b) full+half minima != {(0,1),(0,-1)}");
  const double v_top = fph.ValueNear(0, 1);
  const double v_bottom = fph.ValueNear(0, -1);
  const double v_side = fph.ValueNear(1, 0);
  check.Expect(v_top < v_bottom && v_bottom < v_side,
               "(b) value ordering (0,1) < (0,-1) < (1,0) violated");
  detail << "(b) " << fph_min.size() << " min, v(0,1)=" << Fmt(v_top)
         << " v(0,-1)=" << Fmt(v_bottom) << " v(1,0)=" << Fmt(v_side) << " ";

  for (LandscapeLoss loss :
       {LandscapeLoss::kMinFullFlipped, LandscapeLoss::kMinPlusHalf}) {
    const Landscape l = compute(loss, &t);
    const std::vector<GridPoint> g = GlobalMinima(l, 1e-12);
    bool top = false, bottom = false;
    for (const GridPoint& p : g) {
      top |= WithinCell(p, 0, 1, step);
      bottom |= WithinCell(p, 0, -1, step);
    }
    const bool two = g.size() == 2 && top && bottom;
    check.Expect(two, "(c/d) " + LandscapeLossName(loss) + " has " +
                          std::to_string(g.size()) + " global minima");
    if (two) {
      check.Expect(std::abs(g[0].loss - g[1].loss) < 1e-12,
                   "(c/d) unequal minima");
    }
    detail << "(" << (loss == LandscapeLoss::kMinFullFlipped ? "c" : "d")
           << ") " << g.size() << " global ";
  }
  return Report(2, "loss landscapes on a 0.01 grid over [-1.5, 1.5]^2", check,
                detail.str());
}

// ---------------------------------------------------------------------------
// 3. Rotated IoU against a Monte-Carlo area estimate.

// Independent containment test written from the box definition.
bool Inside(const OrientedBox& b, double x, double y) {
  const double dx = x - b.cx;
  const double dy = y - b.cy;
  const double along = dx * std::cos(b.yaw) + dy * std::sin(b.yaw);
  const double across = -dx * std::sin(b.yaw) + dy * std::cos(b.yaw);
  return std::abs(along) <= b.length / 2 && std::abs(across) <= b.width / 2;
}

// Stratified sampling of box a: one jittered point per cell of a 400 x 250
// grid in a's local frame, counting the points that fall inside b.
double MonteCarloIou(const OrientedBox& a, const OrientedBox& b,
                     std::mt19937_64& rng) {
  constexpr int kNu = 400;
  constexpr int kNv = 250;
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  const double c = std::cos(a.yaw);
  const double s = std::sin(a.yaw);
  long hits = 0;
  for (int i = 0; i < kNu; ++i) {
    for (int j = 0; j < kNv; ++j) {
      const double u = ((i + jitter(rng)) / kNu - 0.5) * a.length;
      const double v = ((j + jitter(rng)) / kNv - 0.5) * a.width;
      hits += Inside(b, a.cx + c * u - s * v, a.cy + s * u + c * v);
    }
  }
  const double area_a = a.length * a.width;
  const double inter = area_a * hits / (static_cast<double>(kNu) * kNv);
  return inter / (area_a + b.length * b.width - inter);
}

bool Criterion3() {
  const auto start = Clock::now();
  Check check;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> size(0.5, 6.0);
  std::uniform_real_distribution<double> offset(-2.5, 2.5);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  double max_err = 0.0;
  int overlapping = 0;
  for (int i = 0; i < 200; ++i) {
    const OrientedBox a{offset(rng), offset(rng), size(rng), size(rng), yaw(rng)};
    const OrientedBox b{a.cx + offset(rng), a.cy + offset(rng), size(rng),
                        size(rng), yaw(rng)};
    const double exact = RotatedIou(a, b);
    const double mc = MonteCarloIou(a, b, rng);
    if (exact > 0.0) ++overlapping;
    max_err = std::max(max_err, std::abs(exact - mc));
  }
  check.Expect(max_err < 0.01, "max |IoU - MC| = " + Fmt(max_err));
  int exact_flips = 0;
  for (int i = 0; i < 200; ++i) {
    const OrientedBox a{offset(rng), offset(rng), size(rng), size(rng), yaw(rng)};
    OrientedBox f = a;
    f.yaw += kPi;
    exact_flips += RotatedIou(a, f) == 1.0;
  }
  check.Expect(exact_flips == 200,
               std::to_string(200 - exact_flips) + " flipped pairs != 1.0");
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 30.0, "runtime " + Fmt(elapsed) + " s");
  return Report(3, "rotated IoU vs 100k-sample Monte-Carlo on 200 pairs", check,
                "max_abs_err=" + Fmt(max_err, 3) + " overlapping=" +
                    std::to_string(overlapping) + "/200 flip_exact=" +
                    std::to_string(exact_flips) + "/200 time=" +
                    Fmt(elapsed, 3) + "s");
}

// ---------------------------------------------------------------------------
// 4. Metric properties on perturbed scenes.

std::vector<DetectionRecord> FlipAll(std::vector<DetectionRecord> dets) {
  for (DetectionRecord& d : dets) {
    d.box.yaw = WrapFull(d.box.yaw + kPi);
    for (double& y : d.yaw) y = WrapFull(y + kPi);
  }
  return dets;
}

bool Criterion4() {
  Check check;
  int scenes = 0;
  double worst_aos_gap = -1.0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    SceneConfig sc;
    sc.actors_per_frame = 12;
    sc.frames = 5;
    sc.seed = 1000 + seed;
    std::vector<GtActor> gts;
    const Dataset ds = GenerateDataset(sc);
    for (const auto* split : {&ds.train, &ds.val}) {
      for (const SynthActor& a : *split) gts.push_back(a.gt);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PerturbConfig pc;
    pc.pos_sigma = 0.6 * u(rng);
    pc.yaw_sigma = 0.8 * u(rng);
    pc.flip_fraction = 0.5 * u(rng);
    pc.fp_rate = 0.3 * u(rng);
    pc.fn_rate = 0.3 * u(rng);
    pc.seed = seed;
    const std::vector<DetectionRecord> dets = PerturbDetections(gts, pc);
    const std::string tag = "scene " + std::to_string(seed) + ": ";

    for (double iou : {0.5, 0.7}) {
      EvalOptions opt;
      opt.ap_iou = iou;
      for (ApInterpolation interp :
           {ApInterpolation::kAllPoint, ApInterpolation::kRecall40}) {
        opt.interp = interp;
        const EvalReport r = Evaluate(dets, gts, opt);
        worst_aos_gap = std::max(worst_aos_gap, r.aos - r.ap);
        check.Expect(r.aos <= r.ap, tag + "AOS > AP");
      }
    }

    // Flipping every detection keeps matching, AP, HOE and l2, and maps each
    // similarity s to 1 - s and each FOE f to 180 - f.
    const EvalReport base = Evaluate(dets, gts);
    const std::vector<DetectionRecord> flipped_dets = FlipAll(dets);
    const EvalReport flipped = Evaluate(flipped_dets, gts);
    check.Expect(flipped.ap == base.ap, tag + "flip-all changed AP");
    check.Expect(flipped.pr_curve.size() == base.pr_curve.size(),
                 tag + "flip-all changed the PR sweep");
    for (size_t i = 0; i < base.pr_curve.size() && i < flipped.pr_curve.size();
         ++i) {
      // Similarity is only defined where the threshold admits a match.
      if (base.pr_curve[i].recall == 0.0) continue;
      check.Expect(std::abs(flipped.pr_curve[i].similarity -
                            (1.0 - base.pr_curve[i].similarity)) < 1e-12,
                   tag + "flip-all similarity != 1 - s");
    }
    if (base.errors.foe_all) {
      check.Expect(std::abs(*flipped.errors.hoe_all - *base.errors.hoe_all) <
                       1e-9,
                   tag + "flip-all changed HOE");
      check.Expect(std::abs(*flipped.errors.foe_all -
                            (180.0 - *base.errors.foe_all)) < 1e-9,
                   tag + "flip-all FOE != 180 - FOE");
      check.Expect(*flipped.errors.l2_all == *base.errors.l2_all,
                   tag + "flip-all changed l2");
    }
    const std::vector<DetectionRecord> clean = PerturbDetections(gts, {});
    const EvalReport clean_flipped = Evaluate(FlipAll(clean), gts);
    check.Expect(clean_flipped.ap == 1.0 && clean_flipped.aos < 1e-12,
                 tag + "flip-all of exact detections: AP " +
                     Fmt(clean_flipped.ap) + " AOS " + Fmt(clean_flipped.aos));

    // Exact detections with unit scores.
    std::vector<DetectionRecord> perfect;
    for (const GtActor& g : gts) {
      DetectionRecord d;
      d.frame = g.frame;
      d.id = g.id;
      d.box = g.box;
      d.score = 1.0;
      d.yaw = g.yaw;
      d.waypoints = g.waypoints;
      perfect.push_back(d);
    }
    const EvalReport p = Evaluate(perfect, gts);
    check.Expect(p.ap == 1.0 && p.aos == 1.0, tag + "perfect AP/AOS != 1");
    check.Expect(*p.errors.foe_all == 0.0 && *p.errors.hoe_all == 0.0 &&
                     *p.errors.l2_all == 0.0 &&
                     p.errors.foe_moving.value_or(0.0) == 0.0 &&
                     p.errors.l2_moving.value_or(0.0) == 0.0,
                 tag + "perfect errors != 0");

    // Strictly monotone rescaling of every score.
    std::vector<DetectionRecord> rescaled = dets;
    for (DetectionRecord& d : rescaled) d.score = std::exp(4.0 * d.score) - 7.0;
    const EvalReport rr = Evaluate(rescaled, gts);
    check.Expect(rr.ap == base.ap && rr.aos == base.aos,
                 tag + "AP changed under monotone rescaling");
    ++scenes;
  }
  return Report(4, "metric properties on 50 perturbed scenes", check,
                "scenes=" + std::to_string(scenes) +
                    " max(AOS-AP)=" + Fmt(worst_aos_gap, 3));
}

// ---------------------------------------------------------------------------
// 5-7. Desk-scale training runs.

struct RunStats {
  std::string name;
  std::vector<EvalReport> reports;  // one per seed
  std::vector<std::vector<DetectionRecord>> detections;
  std::vector<ModelParams> models;

  double Mean(const std::function<double(const EvalReport&)>& f) const {
    double sum = 0.0;
    for (const EvalReport& r : reports) sum += f(r);
    return sum / static_cast<double>(reports.size());
  }
  double aos() const { return Mean([](const EvalReport& r) { return r.aos; }); }
  double ap() const { return Mean([](const EvalReport& r) { return r.ap; }); }
  double foe() const {
    return Mean([](const EvalReport& r) { return r.errors.foe_all.value_or(NAN); });
  }
  double hoe() const {
    return Mean([](const EvalReport& r) { return r.errors.hoe_all.value_or(NAN); });
  }
  double foe_moving() const {
    return Mean(
        [](const EvalReport& r) { return r.errors.foe_moving.value_or(NAN); });
  }
};

constexpr int kSeeds = 3;

struct DeskScale {
  Dataset data;
  std::map<std::string, RunStats> runs;
  double seconds = 0.0;
};

DeskScale TrainDeskScale(const std::vector<std::string>& run_names) {
  DeskScale out;
  SceneConfig scene;  // 40% static, 10% reversing, front 0.6, noise 0.3
  scene.actors_per_frame = 20;
  scene.frames = 100;
  scene.seed = 0;
  out.data = GenerateDataset(scene);
  const auto start = Clock::now();
  for (const std::string& name : run_names) {
    RunStats stats;
    stats.name = name;
    for (int seed = 0; seed < kSeeds; ++seed) {
      TrainConfig cfg;
      const size_t dash = name.find('-');
      cfg.method = Method::Parse(name.substr(0, dash));
      cfg.no_half = name.ends_with("-no_half");
      cfg.no_flip = name.ends_with("-no_flip");
      cfg.epochs = 30;
      cfg.seed = seed;
      const TrainResult trained = Train(cfg, out.data.train);
      stats.models.push_back(trained.params);
      stats.detections.push_back(
          PredictDetections(trained.params, out.data.val));
      std::vector<GtActor> gts;
      for (const SynthActor& a : out.data.val) gts.push_back(a.gt);
      EvalReport r = Evaluate(stats.detections.back(), gts);
      r.name = name;
      stats.reports.push_back(std::move(r));
    }
    out.runs[name] = std::move(stats);
  }
  out.seconds = Seconds(start);
  return out;
}

void PrintTable(const DeskScale& d, const std::vector<std::string>& names) {
  std::printf("  %-20s %7s %7s %7s %7s %7s\n", "run (3-seed mean)", "AOS",
              "AP", "HOE", "FOE", "FOE-mv");
  for (const std::string& n : names) {
    const RunStats& r = d.runs.at(n);
    std::printf("  %-20s %7.2f %7.2f %7.2f %7.2f %7.2f\n", n.c_str(),
                100 * r.aos(), 100 * r.ap(), r.hoe(), r.foe(), r.foe_moving());
  }
}

bool Criterion5(const DeskScale& d) {
  Check check;
  const RunStats& fa = d.runs.at("flip_aware");
  const RunStats& sc = d.runs.at("sin_cos");
  const RunStats& sc2 = d.runs.at("sin_cos_2x");
  const RunStats& l1 = d.runs.at("l1_sin");
  check.Expect(fa.foe() < sc.foe(), "FOE flip_aware " + Fmt(fa.foe()) +
                                        " !< sin_cos " + Fmt(sc.foe()));
  check.Expect(sc.foe() < std::min(sc2.foe(), l1.foe()),
               "FOE sin_cos " + Fmt(sc.foe()) + " !< half-range " +
                   Fmt(std::min(sc2.foe(), l1.foe())));
  const double best_half = std::min(sc2.hoe(), l1.hoe());
  check.Expect(fa.hoe() <= 1.2 * best_half,
               "HOE flip_aware " + Fmt(fa.hoe()) + " > 1.2 x " +
                   Fmt(best_half));
  for (const auto& [name, run] : d.runs) {
    if (name == "flip_aware" || name.starts_with("flip_aware-")) continue;
    check.Expect(fa.aos() > run.aos(), "AOS flip_aware " + Fmt(fa.aos()) +
                                           " !> " + name + " " +
                                           Fmt(run.aos()));
  }
  check.Expect(d.seconds < 300.0, "runtime " + Fmt(d.seconds) + " s");
  return Report(5, "desk-scale orderings, 3 seeds x 30 epochs", check,
                "FOE fa/sc/sc2x/l1=" + Fmt(fa.foe(), 3) + "/" +
                    Fmt(sc.foe(), 3) + "/" + Fmt(sc2.foe(), 3) + "/" +
                    Fmt(l1.foe(), 3) + " HOE fa/best_half=" + Fmt(fa.hoe(), 3) +
                    "/" + Fmt(best_half, 3) + " AOS fa=" + Fmt(fa.aos(), 4) +
                    " time=" + Fmt(d.seconds, 3) + "s");
}

bool Criterion6(const DeskScale& d) {
  Check check;
  const double full = d.runs.at("flip_aware").aos();
  const double no_half = d.runs.at("flip_aware-no_half").aos();
  const double no_flip = d.runs.at("flip_aware-no_flip").aos();
  check.Expect(full >= no_half, "AOS full " + Fmt(full) + " < no_half " +
                                    Fmt(no_half));
  check.Expect(full >= no_flip, "AOS full " + Fmt(full) + " < no_flip " +
                                    Fmt(no_flip));
  return Report(6, "ablation AOS ordering", check,
                "AOS full/no_half/no_flip=" + Fmt(full, 4) + "/" +
                    Fmt(no_half, 4) + "/" + Fmt(no_flip, 4));
}

struct BinTrend {
  std::vector<FlipBin> bins;
  int above_half = 0;  // flip_probs missing or above 0.5
  int foe_inversions = 0;
  bool inversions_in_small_bins = true;
  int speed_inversions = 0;
  std::string table;
};

// Runs every model on `actors`, pools the outputs (frames are offset per
// model so they stay distinct) and bins them by flip probability at the
// operating point.
BinTrend PooledBins(const std::vector<ModelParams>& models,
                    const std::vector<SynthActor>& actors) {
  BinTrend out;
  std::vector<DetectionRecord> dets;
  std::vector<GtActor> gts;
  int64_t max_frame = 0;
  for (const SynthActor& a : actors) max_frame = std::max(max_frame, a.gt.frame);
  int64_t offset = 0;
  for (const ModelParams& m : models) {
    for (DetectionRecord det : PredictDetections(m, actors)) {
      if (!det.flip_prob || *det.flip_prob > 0.5) ++out.above_half;
      det.frame += offset;
      dets.push_back(std::move(det));
    }
    for (const SynthActor& a : actors) {
      GtActor g = a.gt;
      g.frame += offset;
      gts.push_back(std::move(g));
    }
    offset += max_frame + 1;
  }
  const OperatingPoint op = FindOperatingPoint(dets, gts);
  out.bins = FlipProbBins(dets, gts, MatchDetections(dets, gts, 0.5, op.threshold));
  const FlipBin* prev = nullptr;
  std::ostringstream table;
  for (const FlipBin& b : out.bins) {
    if (b.count == 0) continue;
    table << "[" << Fmt(b.lo, 2) << "," << Fmt(b.hi, 2) << ") frac "
          << Fmt(b.frac, 3) << " foe " << Fmt(*b.mean_foe_deg, 3) << " v "
          << Fmt(*b.mean_speed, 3) << "; ";
    if (prev != nullptr) {
      if (*b.mean_foe_deg < *prev->mean_foe_deg) {
        ++out.foe_inversions;
        if (b.frac >= 0.02 && prev->frac >= 0.02) {
          out.inversions_in_small_bins = false;
        }
      }
      if (*b.mean_speed > *prev->mean_speed) ++out.speed_inversions;
    }
    prev = &b;
  }
  out.table = table.str();
  return out;
}

bool Criterion7(const DeskScale& d) {
  Check check;
  const RunStats& fa = d.runs.at("flip_aware");
  // The 400 validation actors give about 40 per bin, too few for a stable
  // per-bin mean when errors are bimodal (near 0 or near 180 degrees). The
  // trend is judged on a larger held-out scene from the same generator; the
  // validation binning is printed for reference.
  const BinTrend val = PooledBins(fa.models, d.data.val);
  std::printf("  flip bins, validation split, 3 seeds pooled: %s\n",
              val.table.c_str());
  SceneConfig held_out_scene;
  held_out_scene.actors_per_frame = 20;
  held_out_scene.frames = 500;
  held_out_scene.seed = 7;
  const Dataset held_out = GenerateDataset(held_out_scene);
  std::vector<SynthActor> actors = held_out.train;
  actors.insert(actors.end(), held_out.val.begin(), held_out.val.end());
  const BinTrend t = PooledBins(fa.models, actors);
  std::printf("  flip bins, 10000 held-out actors, 3 seeds pooled: %s\n",
              t.table.c_str());

  check.Expect(val.above_half == 0 && t.above_half == 0,
               std::to_string(val.above_half + t.above_half) +
                   " flip_probs missing or > 0.5");
  check.Expect(t.foe_inversions == 0 ||
                   (t.foe_inversions == 1 && t.inversions_in_small_bins),
               "mean FOE has " + std::to_string(t.foe_inversions) +
                   " inversion(s)" +
                   (t.inversions_in_small_bins
                        ? ""
                        : " involving bins with >= 2% mass"));
  check.Expect(t.speed_inversions == 0,
               "mean speed increases " + std::to_string(t.speed_inversions) +
                   " time(s)");
  return Report(7, "flip-probability bins on trained flip_aware", check,
                "held-out foe_inversions=" + std::to_string(t.foe_inversions) +
                    " speed_inversions=" + std::to_string(t.speed_inversions) +
                    "; validation foe_inversions=" +
                    std::to_string(val.foe_inversions) +
                    " speed_inversions=" + std::to_string(val.speed_inversions));
}

// ---------------------------------------------------------------------------
// 8. Determinism of the synth and train commands through the C interface.

uint64_t Fnv1a(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

// Hash of every artifact in `dir` except the timestamped metadata.
std::map<std::string, uint64_t> HashArtifacts(const fs::path& dir) {
  std::map<std::string, uint64_t> out;
  for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name == "metadata.json") continue;
    out[name] = Fnv1a(ReadFile(e.path().string()));
  }
  return out;
}

bool Criterion8() {
  Check check;
  const fs::path root = fs::temp_directory_path() / "orient_acceptance_c8";
  fs::remove_all(root);
  orient_config* cfg = nullptr;
  check.Expect(orient_config_new(&cfg) == ORIENT_OK, "config_new failed");
  for (const char* kv :
       {"frames=20", "actors_per_frame=10", "epochs=3", "hidden=32",
        "methods=sin_cos_2x,multibin_4,flip_aware,flip_aware-no_half",
        "train_seeds=2"}) {
    check.Expect(orient_config_set(cfg, kv) == ORIENT_OK,
                 std::string("config_set ") + kv);
  }
  int files = 0;
  for (const char* command : {"synth", "train"}) {
    std::map<std::string, uint64_t> hashes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / (std::string(command) + std::to_string(rep));
      char* summary = nullptr;
      const orient_status st =
          orient_cmd_run(command, cfg, dir.string().c_str(), &summary);
      orient_string_free(summary);
      check.Expect(st == ORIENT_OK, std::string(command) + " failed: " +
                                        orient_last_error());
      if (st == ORIENT_OK) hashes[rep] = HashArtifacts(dir);
    }
    check.Expect(!hashes[0].empty() && hashes[0] == hashes[1],
                 std::string(command) + " artifacts differ between reruns");
    files += static_cast<int>(hashes[0].size());
  }
  orient_config_free(cfg);
  fs::remove_all(root);
  return Report(8, "cmd_synth/cmd_train reruns are hash-identical", check,
                "artifacts_compared=" + std::to_string(files));
}

}  // namespace
}  // namespace orient

int main() {
  using namespace orient;
  int failed = 0;
  failed += !Criterion1();
  failed += !Criterion2();
  failed += !Criterion3();
  failed += !Criterion4();
  const std::vector<std::string> table2 = {"sin_cos_2x", "l1_sin", "sin_cos",
                                           "multibin_2", "multibin_4",
                                           "flip_aware"};
  std::vector<std::string> all = table2;
  all.push_back("flip_aware-no_half");
  all.push_back("flip_aware-no_flip");
  const DeskScale desk = TrainDeskScale(all);
  PrintTable(desk, all);
  failed += !Criterion5(desk);
  failed += !Criterion6(desk);
  failed += !Criterion7(desk);
  failed += !Criterion8();
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
