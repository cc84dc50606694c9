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

#include "orient/config.h"

#include <cmath>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "orient/error.h"
#include "orient/io.h"
#include "orient/landscape.h"

namespace orient {
namespace {

using Json = nlohmann::ordered_json;

struct Key {
  const char* name;
  const char* help;
  std::function<void(ExperimentConfig&, const Json&)> set;
  std::function<Json(const ExperimentConfig&)> get;
  bool is_list = false;
};

template <typename T>
Key Field(const char* name, const char* help, T ExperimentConfig::*member) {
  return {name, help,
          [member](ExperimentConfig& c, const Json& v) {
            c.*member = v.get<T>();
          },
          [member](const ExperimentConfig& c) { return Json(c.*member); },
          std::is_same_v<T, std::vector<std::string>>};
}

template <typename S, typename T>
Key Nested(const char* name, const char* help, S ExperimentConfig::*outer,
           T S::*member) {
  return {name, help,
          [outer, member](ExperimentConfig& c, const Json& v) {
            (c.*outer).*member = v.get<T>();
          },
          [outer, member](const ExperimentConfig& c) {
            return Json((c.*outer).*member);
          }};
}

const char* InterpName(ApInterpolation interp) {
  return interp == ApInterpolation::kRecall40 ? "r40" : "all_point";
}

const std::vector<Key>& Keys() {
  using C = ExperimentConfig;
  static const std::vector<Key> keys = {
      Nested("actors_per_frame", "actors per synthetic frame", &C::scene,
             &SceneConfig::actors_per_frame),
      Nested("frames", "synthetic frames (split 80/20 into train/val)",
             &C::scene, &SceneConfig::frames),
      Nested("static_fraction", "fraction of static actors", &C::scene,
             &SceneConfig::static_fraction),
      Nested("reversing_fraction", "fraction of actors moving backwards",
             &C::scene, &SceneConfig::reversing_fraction),
      Nested("speed_min", "minimum speed of moving actors, m/s", &C::scene,
             &SceneConfig::speed_min),
      Nested("speed_max", "maximum speed of moving actors, m/s", &C::scene,
             &SceneConfig::speed_max),
      Nested("length_min", "minimum box length, m", &C::scene,
             &SceneConfig::length_min),
      Nested("length_max", "maximum box length, m", &C::scene,
             &SceneConfig::length_max),
      Nested("width_min", "minimum box width, m", &C::scene,
             &SceneConfig::width_min),
      Nested("width_max", "maximum box width, m", &C::scene,
             &SceneConfig::width_max),
      Nested("radial_bins", "feature histogram rings", &C::scene,
             &SceneConfig::radial_bins),
      Nested("angular_bins", "feature histogram sectors", &C::scene,
             &SceneConfig::angular_bins),
      Nested("front_signal", "front/back distinguishability in [0, 1]",
             &C::scene, &SceneConfig::front_signal),
      Nested("feature_noise", "Gaussian feature noise sigma", &C::scene,
             &SceneConfig::feature_noise),
      Nested("scene_seed", "dataset generation seed", &C::scene,
             &SceneConfig::seed),
      {"horizon", "trajectory steps at 10 Hz (data and model)",
       [](C& c, const Json& v) {
         c.scene.horizon = v.get<int>();
         c.train.horizon = c.scene.horizon;
       },
       [](const C& c) { return Json(c.scene.horizon); }},
      {"methods",
       "runs: sin_cos_2x, l1_sin, sin_cos, multibin_<n>, flip_aware, "
       "flip_aware-no_half, flip_aware-no_flip",
       [](C& c, const Json& v) { c.methods = v.get<std::vector<std::string>>(); },
       [](const C& c) { return Json(c.methods); }, true},
      Nested("epochs", "training epochs", &C::train, &TrainConfig::epochs),
      Nested("batch_size", "minibatch size", &C::train,
             &TrainConfig::batch_size),
      Nested("learning_rate", "SGD learning rate", &C::train,
             &TrainConfig::learning_rate),
      Nested("momentum", "SGD momentum", &C::train, &TrainConfig::momentum),
      Nested("hidden", "hidden layer width", &C::train, &TrainConfig::hidden),
      Nested("beta", "smooth-L1 threshold", &C::train, &TrainConfig::beta),
      Nested("waypoint_weight", "weight of the waypoint loss", &C::train,
             &TrainConfig::waypoint_weight),
      Nested("grad_clip", "gradient norm cap (0 disables)", &C::train,
             &TrainConfig::grad_clip),
      Nested("train_seed", "first training seed", &C::train,
             &TrainConfig::seed),
      Field("train_seeds", "number of training seeds per run",
            &C::train_seeds),
      Nested("ap_iou", "IoU threshold for AP and AOS", &C::eval,
             &EvalOptions::ap_iou),
      Nested("operating_recall", "recall defining the operating point",
             &C::eval, &EvalOptions::operating_recall),
      Nested("operating_iou", "IoU threshold of the operating point",
             &C::eval, &EvalOptions::operating_iou),
      Nested("flip_bins", "flip-probability bins over [0, 0.5]", &C::eval,
             &EvalOptions::flip_bins),
      {"ap_interpolation", "all_point or r40",
       [](C& c, const Json& v) {
         const std::string s = v.get<std::string>();
         if (s == "all_point") {
           c.eval.interp = ApInterpolation::kAllPoint;
         } else if (s == "r40") {
           c.eval.interp = ApInterpolation::kRecall40;
         } else {
           ThrowInvalid("ap_interpolation must be all_point or r40");
         }
       },
       [](const C& c) { return Json(InterpName(c.eval.interp)); }},
      Field("landscape_losses",
            "full, full_plus_half, min_full_flipped, min_plus_half",
            &C::landscape_losses),
      Field("landscape_gt_deg", "ground-truth yaw of the landscape, degrees",
            &C::landscape_gt_deg),
      Field("landscape_lo", "lower grid bound for s and c", &C::landscape_lo),
      Field("landscape_hi", "upper grid bound for s and c", &C::landscape_hi),
      Field("landscape_step", "grid step", &C::landscape_step),
      Field("gradcheck_trials", "random trials per method",
            &C::gradcheck_trials),
      Field("gradcheck_tolerance", "maximum relative gradient error",
            &C::gradcheck_tolerance),
      Field("gradcheck_seed", "gradient check seed", &C::gradcheck_seed),
      Field("dataset", "dataset JSONL to read instead of generating",
            &C::dataset),
      Field("checkpoints", "checkpoints to evaluate", &C::checkpoints),
      Field("detections", "detections JSONL to evaluate", &C::detections),
      Field("reports", "report JSON files to compare", &C::reports),
  };
  return keys;
}

const Key* FindKey(std::string_view name) {
  for (const Key& k : Keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

void SetKey(ExperimentConfig& cfg, const std::string& name, const Json& value,
            const std::string& source) {
  const Key* key = FindKey(name);
  if (key == nullptr) {
    throw Error(ErrorCode::kParse,
                source + ": unknown config key '" + name + "'");
  }
  try {
    key->set(cfg, value);
  } catch (const Json::exception&) {
    throw Error(ErrorCode::kParse, source + ": key '" + name +
                                       "' has the wrong type: " + value.dump());
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
}

std::vector<std::string> SplitCommas(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(current);
      current.clear();
    } else if (ch != ' ') {
      current += ch;
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

void ExperimentConfig::Validate() const {
  scene.Validate();
  if (methods.empty()) ThrowInvalid("methods must not be empty");
  for (const std::string& run : methods) RunConfig(*this, run, 0).Validate();
  if (train_seeds < 1) ThrowInvalid("train_seeds must be >= 1");
  if (!(eval.ap_iou > 0.0 && eval.ap_iou <= 1.0)) {
    ThrowInvalid("ap_iou must lie in (0, 1]");
  }
  if (!(eval.operating_iou > 0.0 && eval.operating_iou <= 1.0)) {
    ThrowInvalid("operating_iou must lie in (0, 1]");
  }
  if (!(eval.operating_recall > 0.0 && eval.operating_recall <= 1.0)) {
    ThrowInvalid("operating_recall must lie in (0, 1]");
  }
  if (eval.flip_bins < 1) ThrowInvalid("flip_bins must be >= 1");
  for (const std::string& loss : landscape_losses) ParseLandscapeLoss(loss);
  LandscapeSpec spec;
  spec.lo = landscape_lo;
  spec.hi = landscape_hi;
  spec.step = landscape_step;
  spec.gt_yaw = DegToRad(landscape_gt_deg);
  spec.beta = train.beta;
  spec.Validate();
  if (gradcheck_trials < 1) ThrowInvalid("gradcheck_trials must be >= 1");
  if (!(gradcheck_tolerance >= 0.0)) {
    ThrowInvalid("gradcheck_tolerance must be >= 0");
  }
}

TrainConfig RunConfig(const ExperimentConfig& cfg, std::string_view run,
                      uint64_t seed) {
  TrainConfig tc = cfg.train;
  tc.seed = seed;
  tc.horizon = cfg.scene.horizon;
  std::string_view name = run;
  auto strip = [&name](std::string_view suffix) {
    if (name.size() > suffix.size() &&
        name.substr(name.size() - suffix.size()) == suffix) {
      name.remove_suffix(suffix.size());
      return true;
    }
    return false;
  };
  tc.no_half = strip("-no_half");
  tc.no_flip = !tc.no_half && strip("-no_flip");
  tc.method = Method::Parse(name);
  return tc;
}

ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::string& source) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, source + ": config must be a JSON object");
  }
  ExperimentConfig cfg;
  for (const auto& [name, value] : j.items()) SetKey(cfg, name, value, source);
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  return ParseConfig(ReadFile(path), path);
}

void ApplyOverride(ExperimentConfig& cfg, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw Error(ErrorCode::kParse, "override '" + std::string(assignment) +
                                       "' is not of the form key=value");
  }
  const std::string name(assignment.substr(0, eq));
  const std::string_view text = assignment.substr(eq + 1);
  const Key* key = FindKey(name);
  if (key == nullptr) {
    throw Error(ErrorCode::kParse, "--set: unknown config key '" + name + "'");
  }
  Json value = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) {
    value = key->is_list ? Json(SplitCommas(text)) : Json(std::string(text));
  } else if (key->is_list && value.is_string()) {
    value = Json(SplitCommas(value.get<std::string>()));
  }
  SetKey(cfg, name, value, "--set");
}

std::string ConfigToJson(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const Key& k : Keys()) {
    Json v = k.get(cfg);
    if (v.is_number_float()) v = Round9(v.get<double>());
    j[k.name] = std::move(v);
  }
  return j.dump(2) + "\n";
}

std::string DescribeConfigKeys() {
  const ExperimentConfig defaults;
  std::ostringstream out;
  size_t width = 0;
  for (const Key& k : Keys()) width = std::max(width, std::string(k.name).size());
  for (const Key& k : Keys()) {
    const std::string name = k.name;
    out << "  " << name << std::string(width - name.size() + 2, ' ')
        << k.help << " (default: " << k.get(defaults).dump() << ")\n";
  }
  return out.str();
}

}  // namespace orient
